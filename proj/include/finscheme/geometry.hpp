#pragma once

// Ringed and locally ringed spaces, their morphisms, affine schemes and
// schemes, each as a checker producing named entries with witnesses.

#include <optional>
#include <string>
#include <vector>

#include "finscheme/limits.hpp"
#include "finscheme/spectrum.hpp"

namespace finscheme {

struct RingedSpace {
    PresheafOfRings sheaf;
    const Topology& space() const { return sheaf.topology(); }
};

// Throws InvalidArgument when the presheaf is not a sheaf of rings.
inline RingedSpace make_ringed_space(PresheafOfRings p, const Guards& g = {}) {
    auto pre = check_presheaf_axioms(p);
    if (auto* f = pre.first_failure()) throw Error(ErrorCode::InvalidArgument, f->name + ": " + f->witness);
    auto sh = check_sheaf_axioms(p, g);
    if (auto* f = sh.first_failure()) throw Error(ErrorCode::InvalidArgument, f->name + ": " + f->witness);
    return RingedSpace{std::move(p)};
}

inline RingedSpace spec_ringed_space(const StructureSheaf& s) { return RingedSpace{s.presheaf}; }

// f : source -> dest with phi : O_dest -> f_* O_source.
struct RingedSpaceMorphism {
    RingedSpace source;
    RingedSpace dest;
    ContinuousMap f;
    PresheafMorphism phi;
};

inline CheckReport check_ringed_space_morphism(const RingedSpaceMorphism& m) {
    CheckReport rep;
    Verdict cont = check_continuous(m.f);
    if (cont && !(m.f.source == m.source.space() && m.f.dest == m.dest.space()))
        cont = Verdict::fail("map does not run between the two spaces");
    rep.add("continuous", cont, "morphism_ringed_spaces.is_continuous");
    if (!cont) return rep;
    Verdict shape = Verdict::pass();
    if (!(m.phi.source == m.dest.sheaf)) shape = Verdict::fail("phi source is not the destination sheaf");
    else if (!(m.phi.target == direct_image(m.source.sheaf, m.f))) shape = Verdict::fail("phi target is not the direct image");
    rep.add("phi_shape", shape, "morphism_ringed_spaces.is_morphism_of_sheaves");
    if (shape) rep.append(check_presheaf_morphism(m.phi));
    return rep;
}

inline RingedSpaceMorphism identity_ringed_morphism(const RingedSpace& rs) {
    ContinuousMap f = identity_map(rs.space());
    PresheafMorphism phi = identity_morphism(rs.sheaf);
    phi.target = direct_image(rs.sheaf, f);
    return {rs, rs, std::move(f), std::move(phi)};
}

inline CheckReport check_locally_ringed_space(const RingedSpace& rs, const Guards& g = {}) {
    CheckReport rep;
    const auto pts = rs.space().carrier().members();
    if (pts.empty()) rep.add("stalks_are_local", Verdict::pass("empty space"), "locally_ringed_space.stalks_are_local");
    for (Elem x : pts) {
        const auto st = stalk_at(rs.sheaf, x, g);
        const auto loc = check_local_ring(st.ring(), g);
        const std::string at = "point " + std::to_string(x) + ": ";
        if (loc.local)
            rep.add("stalks_are_local", Verdict::pass(at + "maximal ideal " + loc.maximal->to_string()),
                    "locally_ringed_space.stalks_are_local");
        else
            rep.add("stalks_are_local",
                    Verdict::fail(at + std::to_string(loc.all_maximal.size()) + " maximal ideals in a stalk of size " +
                                  std::to_string(st.size())),
                    "locally_ringed_space.stalks_are_local");
    }
    return rep;
}

struct StalkIso {
    Stalk stalk;
    LocalizedRing local;
    RingHom hom;
    bool canonical;  // false when the search fallback supplied the map
    std::string path;
};

// Evaluation at p: [U, s] -> s(p) in R_p. Verified well-defined across every
// representative, anchored at v for zero and one, bijective and a ring map.
inline StalkIso stalk_to_localization(const StructureSheaf& sh, Elem p, std::size_t v, const Guards& g = {}) {
    const auto& t = sh.space.topology;
    if (p >= sh.space.point_count()) throw Error(ErrorCode::NotMember, "no point " + std::to_string(p));
    if (v >= t.open_count() || !t.open(v).contains(p))
        throw Error(ErrorCode::NotMember, "anchor open must contain the point");
    Stalk st = stalk_at(sh.presheaf, p, g);
    const LocalizedRing& loc = sh.space.local_rings[p];
    RingHom h{st.ring(), loc.ring(), std::vector<Elem>(st.size())};
    for (Elem c = 0; c < st.size(); ++c) {
        const auto& r = st.canonical()[c];
        h.map[c] = sh.value(r.open, r.section, p);
    }

    Verdict ok = Verdict::pass();
    for (const auto& x : st.all_pairs())
        if (sh.value(x.open, x.section, p) != h(st.class_of(x))) {
            ok = Verdict::fail("evaluation differs across representatives");
            break;
        }
    const auto& rv = sh.presheaf.section_ring(v);
    if (ok && (h(st.class_of(v, rv.zero())) != loc.ring().zero() || h(st.class_of(v, rv.one())) != loc.ring().one()))
        ok = Verdict::fail("zero or one at the anchor open not preserved");
    if (ok && !is_bijective(h.map, loc.size())) ok = Verdict::fail("evaluation is not bijective");
    if (ok) ok = check_ring_hom(h);
    if (ok) return {std::move(st), loc, std::move(h), true, "evaluation"};

    auto found = ring_iso_search(st.ring(), loc.ring());
    if (!found) throw Error(ErrorCode::Mismatch, "stalk and localization are not isomorphic: " + ok.witness);
    return {std::move(st), loc, std::move(*found), false, "search (evaluation failed: " + ok.witness + ")"};
}

inline StalkIso stalk_to_localization(const FiniteRing& r, Elem p, std::size_t v, const Guards& g = {}) {
    return stalk_to_localization(structure_sheaf(r, g), p, v, g);
}

// Locality of a ring carried across an isomorphism onto a local ring.
inline bool iso_transport_local(const FiniteRing& a, const FiniteRing& b, const RingHom& h, const Guards& g = {}) {
    if (!is_bijective(h.map, b.size()) || !check_ring_hom(h.map, a, b))
        throw Error(ErrorCode::InvalidArgument, "map is not a ring isomorphism");
    if (!is_local_ring(b, g)) throw Error(ErrorCode::NotLocalRing, "target ring is not local");
    return is_local_ring(a, g).ok;
}

inline CheckReport spec_locally_ringed(const StructureSheaf& sh, const Guards& g = {}) {
    CheckReport rep = check_locally_ringed_space(spec_ringed_space(sh), g);
    const std::size_t whole = sh.space.topology.carrier_index();
    for (Elem p = 0; p < sh.space.point_count(); ++p) {
        const std::string at = "point " + std::to_string(p) + " " + sh.space.points[p].to_string() + ": ";
        try {
            auto iso = stalk_to_localization(sh, p, whole, g);
            rep.add("stalk_iso_local_ring",
                    Verdict::pass(at + iso.path + ", " + std::to_string(iso.stalk.size()) + " elements"),
                    "stalk_at_prime_is_iso_to_local_ring_at_prime");
        } catch (const GuardError&) {
            throw;
        } catch (const Error& e) {
            rep.add("stalk_iso_local_ring", Verdict::fail(at + e.what()), "stalk_at_prime_is_iso_to_local_ring_at_prime");
        }
    }
    return rep;
}

inline CheckReport spec_locally_ringed(const FiniteRing& r, const Guards& g = {}) {
    return spec_locally_ringed(structure_sheaf(r, g), g);
}

struct InducedStalkMap {
    Stalk dest_stalk;    // at f(x)
    Stalk source_stalk;  // at x
    RingHom hom;
};

// [V, t] -> [f^-1 V, phi(V)(t)]; throws WellDefinednessFailure with a witness.
inline InducedStalkMap induced_stalk_morphism(const RingedSpaceMorphism& m, Elem x, const Guards& g = {}) {
    if (!m.source.space().carrier().contains(x)) throw Error(ErrorCode::NotMember, "point " + std::to_string(x) + " is not in the source");
    const Elem fx = m.f.map[x];
    Stalk dst = stalk_at(m.dest.sheaf, fx, g);
    Stalk src = stalk_at(m.source.sheaf, x, g);
    auto image = [&](LimitPair y) {
        const std::size_t pre = m.source.space().require_open(m.f.preimage(m.dest.space().open(y.open)));
        return src.class_of(pre, m.phi.per_open[y.open][y.section]);
    };
    RingHom h{dst.ring(), src.ring(), std::vector<Elem>(dst.size())};
    for (Elem c = 0; c < dst.size(); ++c) h.map[c] = image(dst.canonical()[c]);
    for (const auto& y : dst.all_pairs())
        if (image(y) != h(dst.class_of(y)))
            throw Error(ErrorCode::WellDefinednessFailure, "point " + std::to_string(x) + ": representative (" +
                                                               m.dest.space().open(y.open).to_string() + "," +
                                                               std::to_string(y.section) + ") disagrees with its class");
    if (auto v = check_ring_hom(h); !v)
        throw Error(ErrorCode::WellDefinednessFailure, "point " + std::to_string(x) + ": " + v.witness);
    return {std::move(dst), std::move(src), std::move(h)};
}

inline CheckReport check_morphism_locally_ringed(const RingedSpaceMorphism& m, const Guards& g = {}) {
    CheckReport rep = check_ringed_space_morphism(m);
    if (!rep.passed()) return rep;
    const auto pts = m.source.space().carrier().members();
    if (pts.empty()) rep.add("are_local_morphisms", Verdict::pass("empty space"), "morphism_locally_ringed_spaces.are_local_morphisms");
    for (Elem x : pts) {
        const std::string at = "point " + std::to_string(x) + ": ";
        Verdict v = Verdict::pass();
        try {
            auto ind = induced_stalk_morphism(m, x, g);
            v = is_local_hom(ind.hom, g);
            v.witness = at + v.witness;
        } catch (const GuardError&) {
            throw;
        } catch (const Error& e) {
            v = Verdict::fail(at + e.what());
        }
        rep.add("are_local_morphisms", v, "morphism_locally_ringed_spaces.are_local_morphisms");
    }
    return rep;
}

inline CheckReport check_iso_locally_ringed(const RingedSpaceMorphism& m, const Guards& g = {}) {
    CheckReport rep = check_morphism_locally_ringed(m, g);
    if (!rep.passed()) return rep;
    rep.add("is_homeomorphism", check_homeomorphism(m.f), "iso_locally_ringed_spaces.is_homeomorphism");
    rep.add("is_iso_of_sheaves",
            check_iso_presheaves(m.phi) ? Verdict::pass() : Verdict::fail("phi has no inverse morphism of presheaves"),
            "iso_locally_ringed_spaces.is_iso_of_sheaves");
    return rep;
}

// rs is locally ringed and m : rs -> Spec r is an isomorphism of locally
// ringed spaces whose destination is the structure sheaf of r.
inline CheckReport check_affine_scheme(const RingedSpace& rs, const FiniteRing& r, const RingedSpaceMorphism& m,
                                       const Guards& g = {}) {
    CheckReport rep = check_locally_ringed_space(rs, g);
    const auto spec = structure_sheaf(r, g);
    Verdict target = Verdict::pass();
    if (!(m.source.sheaf == rs.sheaf)) target = Verdict::fail("morphism source is not the given space");
    else if (!(m.dest.sheaf == spec.presheaf)) target = Verdict::fail("morphism does not target the spectrum of the ring");
    rep.add("targets_spectrum", target, "affine_scheme");
    if (!target) return rep;
    rep.append(check_iso_locally_ringed(m, g));
    return rep;
}

inline RingedSpaceMorphism spec_identity_witness(const StructureSheaf& sh) {
    return identity_ringed_morphism(spec_ringed_space(sh));
}

struct SchemeEntry {
    Elem point;
    std::size_t open;        // open index in the scheme's topology
    FiniteRing ring;
    RingedSpace induced;     // the sheaf restricted to the open
    RingedSpaceMorphism iso; // induced -> Spec ring
};

struct SchemeWitness {
    std::vector<SchemeEntry> entries;
};

// Push a morphism of presheaves on the source space forward along f.
inline PresheafMorphism direct_image_morphism(const PresheafMorphism& m, const ContinuousMap& f) {
    PresheafMorphism out{direct_image(m.source, f), direct_image(m.target, f), {}};
    for (const auto& v : f.dest.opens()) out.per_open.push_back(m.per_open[m.source.topology().require_open(f.preimage(v))]);
    return out;
}

// The sheaf restricted to its whole carrier, related to the original by an
// explicit relabelling of opens rather than by assumed equality.
inline PresheafMorphism whole_space_identification(const PresheafOfRings& p) {
    PresheafOfRings ind = induced_sheaf(p, p.topology().carrier());
    PresheafMorphism m{p, ind, {}};
    for (std::size_t u = 0; u < p.open_count(); ++u) {
        const std::size_t j = ind.topology().require_open(p.open(u));
        if (j != u) throw std::logic_error("whole-space subspace reorders opens");
        m.per_open.push_back(identity_hom(p.section_ring(u)).map);
    }
    return m;
}

inline SchemeWitness affine_to_scheme(const RingedSpace& rs, const FiniteRing& r, const RingedSpaceMorphism& m,
                                      const Guards& g = {}) {
    if (auto* f = check_affine_scheme(rs, r, m, g).first_failure())
        throw Error(ErrorCode::InvalidArgument, "not an affine scheme: " + f->name + ": " + f->witness);
    SchemeWitness w;
    const PointSet whole = rs.space().carrier();
    const auto members = whole.members();
    if (members.empty()) return w;

    const PresheafMorphism ident = whole_space_identification(rs.sheaf);
    RingedSpace induced{ident.target};
    ContinuousMap f{induced.space(), m.f.dest, m.f.map};
    PresheafMorphism phi = compose_morphisms(direct_image_morphism(ident, m.f), m.phi);
    phi.target = direct_image(induced.sheaf, f);
    RingedSpaceMorphism iso{induced, m.dest, std::move(f), std::move(phi)};
    const std::size_t u = rs.space().carrier_index();
    for (Elem x : members) w.entries.push_back({x, u, r, induced, iso});
    return w;
}

// Every point lies in some entry's open; each entry's space is the induced
// sheaf on that open and is affine via its iso. Throws UncoveredPoint.
inline CheckReport check_scheme(const RingedSpace& rs, const SchemeWitness& w, const Guards& g = {}) {
    CheckReport rep;
    const auto& t = rs.space();
    for (Elem x : t.carrier().members()) {
        bool covered = false;
        for (const auto& e : w.entries) covered = covered || (e.open < t.open_count() && t.open(e.open).contains(x));
        if (!covered) throw Error(ErrorCode::UncoveredPoint, "point " + std::to_string(x) + " has no affine neighborhood");
    }
    rep.add("covered", Verdict::pass(std::to_string(t.carrier().count()) + " points, " + std::to_string(w.entries.size()) + " entries"),
            "scheme.are_affine_schemes");
    for (const auto& e : w.entries) {
        const std::string at = "point " + std::to_string(e.point) + ": ";
        if (!t.open(e.open).contains(e.point)) {
            rep.add("scheme_entry", Verdict::fail(at + "open does not contain the point"), "scheme");
            continue;
        }
        if (!(e.induced.sheaf == induced_sheaf(rs.sheaf, t.open(e.open)))) {
            rep.add("scheme_entry", Verdict::fail(at + "entry space is not the induced sheaf"), "scheme");
            continue;
        }
        const auto sub = check_affine_scheme(e.induced, e.ring, e.iso, g);
        if (auto* f = sub.first_failure())
            rep.add("scheme_entry", Verdict::fail(at + f->name + ": " + f->witness), "scheme");
        else
            rep.add("scheme_entry", Verdict::pass(at + "open " + t.open(e.open).to_string()), "scheme");
    }
    return rep;
}

// The empty space with the zero ring over its only open.
inline RingedSpace empty_scheme() { return RingedSpace{zero_presheaf(Topology{})}; }

}  // namespace finscheme

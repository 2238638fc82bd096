#pragma once

// Presheaves of rings over finite topologies. Sections over the open with
// index i form `section_ring(i)`; restriction tables are stored for nested
// pairs only.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finscheme/hom.hpp"
#include "finscheme/topology.hpp"

namespace finscheme {

class PresheafOfRings {
public:
    using OpenPair = std::pair<std::size_t, std::size_t>;

    PresheafOfRings() : PresheafOfRings(Topology{}, {FiniteRing{}}, {{{0, 0}, {0}}}) {}

    // Shape checks only (every nested pair has a total table); the ring axioms
    // are the business of check_presheaf_axioms.
    PresheafOfRings(Topology t, std::vector<FiniteRing> rings, std::map<OpenPair, std::vector<Elem>> restriction)
        : topology_(std::move(t)), rings_(std::move(rings)), restriction_(std::move(restriction)) {
        if (rings_.size() != topology_.open_count())
            throw Error(ErrorCode::InvalidArgument, "one section ring per open is required");
        for (std::size_t u = 0; u < topology_.open_count(); ++u)
            for (std::size_t v = 0; v < topology_.open_count(); ++v) {
                if (!topology_.open(v).is_subset_of(topology_.open(u))) continue;
                auto it = restriction_.find({u, v});
                if (it == restriction_.end())
                    throw Error(ErrorCode::InvalidArgument, "missing restriction " + describe_pair(u, v));
                if (it->second.size() != rings_[u].size())
                    throw Error(ErrorCode::InvalidArgument, "restriction " + describe_pair(u, v) + " is not total");
            }
    }

    const Topology& topology() const { return topology_; }
    std::size_t open_count() const { return topology_.open_count(); }
    const PointSet& open(std::size_t i) const { return topology_.open(i); }

    const FiniteRing& section_ring(std::size_t u) const { return rings_.at(u); }
    const FiniteRing& section_ring(const PointSet& u) const { return rings_[topology_.require_open(u)]; }
    const std::vector<FiniteRing>& section_rings() const { return rings_; }

    const std::vector<Elem>& restriction(std::size_t u, std::size_t v) const {
        auto it = restriction_.find({u, v});
        if (it == restriction_.end()) throw Error(ErrorCode::NotNested, describe_pair(u, v) + " is not a nested pair");
        return it->second;
    }
    Elem restrict(std::size_t u, std::size_t v, Elem s) const { return restriction(u, v)[s]; }
    RingHom restriction_hom(std::size_t u, std::size_t v) const { return {rings_[u], rings_[v], restriction(u, v)}; }
    const std::map<OpenPair, std::vector<Elem>>& restrictions() const { return restriction_; }

    // The sole element of the ring over the empty open.
    Elem base_elem() const { return rings_[topology_.empty_index()].zero(); }

    PresheafOfRings with_restriction(std::size_t u, std::size_t v, std::vector<Elem> map) const {
        PresheafOfRings copy = *this;
        copy.restriction_.at({u, v}) = std::move(map);
        return copy;
    }

    bool operator==(const PresheafOfRings& o) const {
        if (!(topology_ == o.topology_) || restriction_ != o.restriction_) return false;
        for (std::size_t i = 0; i < rings_.size(); ++i)
            if (!rings_[i].same_tables(o.rings_[i])) return false;
        return true;
    }

    std::string describe_pair(std::size_t u, std::size_t v) const {
        return "(" + topology_.open(u).to_string() + "," + topology_.open(v).to_string() + ")";
    }

private:
    Topology topology_;
    std::vector<FiniteRing> rings_;
    std::map<OpenPair, std::vector<Elem>> restriction_;
};

// F(U) = r for nonempty U, F(empty) = zero ring, identity restrictions.
inline PresheafOfRings constant_presheaf(const Topology& t, const FiniteRing& r) {
    std::vector<FiniteRing> rings;
    std::map<PresheafOfRings::OpenPair, std::vector<Elem>> res;
    for (std::size_t u = 0; u < t.open_count(); ++u) rings.push_back(t.open(u).empty() ? zmod(1) : r);
    for (std::size_t u = 0; u < t.open_count(); ++u)
        for (std::size_t v = 0; v < t.open_count(); ++v) {
            if (!t.open(v).is_subset_of(t.open(u))) continue;
            std::vector<Elem> m(rings[u].size());
            for (Elem x = 0; x < m.size(); ++x) m[x] = t.open(v).empty() ? 0 : x;
            res[{u, v}] = std::move(m);
        }
    return PresheafOfRings(t, std::move(rings), std::move(res));
}

inline PresheafOfRings zero_presheaf(const Topology& t) { return constant_presheaf(t, zmod(1)); }

inline CheckReport check_presheaf_axioms(const PresheafOfRings& p) {
    CheckReport rep;
    const auto& t = p.topology();
    const std::size_t k = t.open_count();

    const auto& empty_ring = p.section_ring(t.empty_index());
    rep.add("ring_of_empty",
            empty_ring.size() == 1 ? Verdict::pass()
                                   : Verdict::fail("ring over the empty open has " + std::to_string(empty_ring.size()) + " elements"),
            "presheaf_of_rings.ring_of_empty");

    Verdict rings_ok = Verdict::pass();
    for (std::size_t u = 0; u < k && rings_ok; ++u) {
        auto v = check_ring_axioms(p.section_ring(u), false);
        if (!v.empty()) rings_ok = Verdict::fail("open " + t.open(u).to_string() + ": " + v.front().describe());
    }
    rep.add("section_rings_are_rings", rings_ok, "is_ring_from_is_homomorphism");

    Verdict homs = Verdict::pass(), ident = Verdict::pass(), assoc = Verdict::pass();
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            if (!t.open(v).is_subset_of(t.open(u))) continue;
            if (homs) {
                if (auto h = check_ring_hom(p.restriction_hom(u, v)); !h)
                    homs = Verdict::fail("restriction " + p.describe_pair(u, v) + ": " + h.witness);
            }
            if (u == v && ident) {
                const auto& m = p.restriction(u, u);
                for (Elem x = 0; x < m.size(); ++x)
                    if (m[x] != x) {
                        ident = Verdict::fail("open " + t.open(u).to_string() + ", section " + std::to_string(x) +
                                              " restricts to " + std::to_string(m[x]));
                        break;
                    }
            }
            if (!assoc) continue;
            for (std::size_t w = 0; w < k && assoc; ++w) {
                if (!t.open(w).is_subset_of(t.open(v))) continue;
                const auto& uw = p.restriction(u, w);
                const auto& uv = p.restriction(u, v);
                const auto& vw = p.restriction(v, w);
                for (Elem x = 0; x < uw.size(); ++x)
                    if (uw[x] != vw[uv[x]]) {
                        assoc = Verdict::fail("opens " + t.open(u).to_string() + " > " + t.open(v).to_string() + " > " +
                                              t.open(w).to_string() + ", section " + std::to_string(x));
                        break;
                    }
            }
        }
    rep.add("is_ring_morphism", homs, "presheaf_of_rings.is_ring_morphism");
    rep.add("identity_map", ident, "presheaf_of_rings.identity_map");
    rep.add("assoc_comp", assoc, "presheaf_of_rings.assoc_comp");
    return rep;
}

struct CoverEnumeration {
    std::vector<std::vector<std::size_t>> covers;  // open indices, ascending
    bool truncated = false;
};

// Subfamilies of the opens inside U whose union is U, by part count then
// lexicographically. Past `max_covers`, only 1- and 2-part covers are kept.
inline CoverEnumeration enumerate_covers(const Topology& t, std::size_t u, const Guards& g = {}) {
    CoverEnumeration out;
    const PointSet& target = t.open(u);
    const auto inside = t.opens_within(target);
    const std::size_t m = inside.size();
    std::vector<std::size_t> pick;
    auto visit = [&](auto&& self, std::size_t start, std::size_t want) -> void {
        if (pick.size() == want) {
            PointSet un(t.universe());
            for (auto i : pick) un = un | t.open(i);
            if (un == target) {
                if (want <= 2 || out.covers.size() < g.max_covers) out.covers.push_back(pick);
                else out.truncated = true;
            }
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            if (want > 2 && out.covers.size() >= g.max_covers) {
                out.truncated = true;
                return;
            }
            pick.push_back(inside[i]);
            self(self, i + 1, want);
            pick.pop_back();
        }
    };
    for (std::size_t want = 0; want <= m; ++want) visit(visit, 0, want);
    return out;
}

struct GlueingOutcome {
    std::size_t compatible_families = 0;
    std::size_t glued = 0;        // families with at least one glued section
    std::size_t unique_glued = 0; // families with exactly one
    std::optional<std::vector<Elem>> failure;  // a compatible family that does not glue
};

inline GlueingOutcome glue_over_cover(const PresheafOfRings& p, std::size_t u, const std::vector<std::size_t>& parts,
                                      const Guards& g = {}) {
    const auto& t = p.topology();
    GlueingOutcome out;
    // Restriction tuple of each global section, for lookup.
    std::map<std::vector<Elem>, std::vector<Elem>> by_restrictions;
    for (Elem s = 0; s < p.section_ring(u).size(); ++s) {
        std::vector<Elem> key;
        for (auto v : parts) key.push_back(p.restrict(u, v, s));
        by_restrictions[key].push_back(s);
    }
    std::vector<std::size_t> meet(parts.size() * parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j)
            meet[i * parts.size() + j] = t.require_open(t.open(parts[i]) & t.open(parts[j]));

    std::vector<Elem> fam;
    std::uint64_t visited = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (++visited > g.max_sections) throw GuardError("section families over a cover", visited, g.max_sections);
        if (i == parts.size()) {
            ++out.compatible_families;
            auto it = by_restrictions.find(fam);
            if (it == by_restrictions.end()) {
                if (!out.failure) out.failure = fam;
                return;
            }
            ++out.glued;
            if (it->second.size() == 1) ++out.unique_glued;
            return;
        }
        for (Elem s = 0; s < p.section_ring(parts[i]).size(); ++s) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                const auto w = meet[i * parts.size() + j];
                ok = p.restrict(parts[i], w, s) == p.restrict(parts[j], w, fam[j]);
            }
            if (!ok) continue;
            fam.push_back(s);
            self(self, i + 1);
            fam.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline CheckReport check_sheaf_axioms(const PresheafOfRings& p, const Guards& g = {}) {
    CheckReport rep;
    const auto& t = p.topology();
    Verdict locality = Verdict::pass(), glueing = Verdict::pass(), unique = Verdict::pass();
    std::size_t covers = 0, families = 0;
    bool truncated = false;

    auto describe_cover = [&](std::size_t u, const std::vector<std::size_t>& parts) {
        std::string s = "U=" + t.open(u).to_string() + " cover [";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + t.open(parts[i]).to_string();
        return s + "]";
    };

    for (std::size_t u = 0; u < t.open_count(); ++u) {
        const auto en = enumerate_covers(t, u, g);
        truncated = truncated || en.truncated;
        const auto& ring_u = p.section_ring(u);
        for (const auto& parts : en.covers) {
            ++covers;
            if (locality) {
                for (Elem s = 0; s < ring_u.size(); ++s) {
                    if (s == ring_u.zero()) continue;
                    bool vanishes = true;
                    for (auto v : parts) vanishes = vanishes && p.restrict(u, v, s) == p.section_ring(v).zero();
                    if (vanishes) {
                        locality = Verdict::fail(describe_cover(u, parts) + ": nonzero section " + std::to_string(s) +
                                                 " restricts to zero on every part");
                        break;
                    }
                }
            }
            const auto gl = glue_over_cover(p, u, parts, g);
            families += gl.compatible_families;
            if (glueing && gl.failure) {
                std::string fam;
                for (std::size_t i = 0; i < gl.failure->size(); ++i) fam += (i ? "," : "") + std::to_string((*gl.failure)[i]);
                glueing = Verdict::fail(describe_cover(u, parts) + ": compatible family (" + fam + ") has no glued section");
            }
            if (unique && gl.unique_glued != gl.glued)
                unique = Verdict::fail(describe_cover(u, parts) + ": a compatible family glues to several sections");
        }
    }
    const std::string detail = std::to_string(covers) + " covers" + (truncated ? " (truncated)" : "");
    if (locality) locality.witness = detail;
    if (glueing) glueing.witness = detail + ", " + std::to_string(families) + " compatible families";
    rep.add("locality", locality, "sheaf_of_rings.locality");
    rep.add("glueing", glueing, "sheaf_of_rings.glueing");
    // Uniqueness follows from locality; only meaningful when locality holds.
    if (locality) rep.add("glueing_unique", unique, "sheaf_of_rings.locality");
    else rep.skip("glueing_unique", "locality failed", "sheaf_of_rings.locality");
    return rep;
}

struct PresheafMorphism {
    PresheafOfRings source;
    PresheafOfRings target;
    std::vector<std::vector<Elem>> per_open;  // indexed by open index
};

// Sheaf morphisms are presheaf morphisms.
using SheafMorphism = PresheafMorphism;

inline CheckReport check_presheaf_morphism(const PresheafMorphism& m) {
    CheckReport rep;
    const auto& t = m.source.topology();
    if (!(t == m.target.topology()) || m.per_open.size() != t.open_count()) {
        rep.add("same_topology", Verdict::fail("source and target live on different spaces"));
        return rep;
    }
    Verdict homs = Verdict::pass(), squares = Verdict::pass();
    for (std::size_t u = 0; u < t.open_count() && homs; ++u)
        if (auto v = check_ring_hom(m.per_open[u], m.source.section_ring(u), m.target.section_ring(u)); !v)
            homs = Verdict::fail("open " + t.open(u).to_string() + ": " + v.witness);
    rep.add("is_ring_morphism", homs, "morphism_presheaves_of_rings.is_ring_morphism");
    if (!homs) {
        rep.skip("comm_diagrams", "per-open maps are not homomorphisms", "morphism_presheaves_of_rings.comm_diagrams");
        return rep;
    }
    for (std::size_t u = 0; u < t.open_count() && squares; ++u)
        for (std::size_t v = 0; v < t.open_count() && squares; ++v) {
            if (!t.open(v).is_subset_of(t.open(u))) continue;
            for (Elem x = 0; x < m.source.section_ring(u).size(); ++x)
                if (m.target.restrict(u, v, m.per_open[u][x]) != m.per_open[v][m.source.restrict(u, v, x)]) {
                    squares = Verdict::fail("square " + m.source.describe_pair(u, v) + " at section " + std::to_string(x));
                    break;
                }
        }
    rep.add("comm_diagrams", squares, "morphism_presheaves_of_rings.comm_diagrams");
    return rep;
}

inline PresheafMorphism identity_morphism(const PresheafOfRings& p) {
    PresheafMorphism m{p, p, {}};
    for (std::size_t u = 0; u < p.open_count(); ++u) m.per_open.push_back(identity_hom(p.section_ring(u)).map);
    return m;
}

// g after f, open by open.
inline PresheafMorphism compose_morphisms(const PresheafMorphism& g, const PresheafMorphism& f) {
    if (!(f.target == g.source)) throw Error(ErrorCode::Mismatch, "target of the first morphism is not the source of the second");
    PresheafMorphism out{f.source, g.target, {}};
    for (std::size_t u = 0; u < f.per_open.size(); ++u) {
        std::vector<Elem> c(f.per_open[u].size());
        for (Elem x = 0; x < c.size(); ++x) c[x] = g.per_open[u][f.per_open[u][x]];
        out.per_open.push_back(std::move(c));
    }
    return out;
}

// Inverse morphism if every per-open map is bijective and the inverse family
// is itself a morphism.
inline std::optional<PresheafMorphism> check_iso_presheaves(const PresheafMorphism& m) {
    if (!check_presheaf_morphism(m).passed()) return std::nullopt;
    PresheafMorphism inv{m.target, m.source, {}};
    for (std::size_t u = 0; u < m.per_open.size(); ++u) {
        auto h = inverse(RingHom{m.source.section_ring(u), m.target.section_ring(u), m.per_open[u]});
        if (!h) return std::nullopt;
        inv.per_open.push_back(std::move(h->map));
    }
    if (!check_presheaf_morphism(inv).passed()) return std::nullopt;
    return inv;
}

// F|_U on the subspace U: V' -> F(U n V') with the ambient restrictions.
inline PresheafOfRings induced_sheaf(const PresheafOfRings& p, const PointSet& u) {
    const auto& t = p.topology();
    if (!t.is_open(u)) throw Error(ErrorCode::NotOpen, u.to_string() + " is not open");
    Topology sub = induced_topology(t, u);
    std::vector<std::size_t> ambient;
    std::vector<FiniteRing> rings;
    for (const auto& v : sub.opens()) {
        ambient.push_back(t.require_open(v));
        rings.push_back(p.section_ring(ambient.back()));
    }
    std::map<PresheafOfRings::OpenPair, std::vector<Elem>> res;
    for (std::size_t a = 0; a < sub.open_count(); ++a)
        for (std::size_t b = 0; b < sub.open_count(); ++b)
            if (sub.open(b).is_subset_of(sub.open(a))) res[{a, b}] = p.restriction(ambient[a], ambient[b]);
    return PresheafOfRings(std::move(sub), std::move(rings), std::move(res));
}

// f_* F on the destination: V -> F(f^-1 V).
inline PresheafOfRings direct_image(const PresheafOfRings& p, const ContinuousMap& f) {
    if (!(f.source == p.topology())) throw Error(ErrorCode::Mismatch, "map source is not the presheaf's space");
    if (auto v = check_continuous(f); !v) throw Error(ErrorCode::NotContinuous, v.witness);
    const auto& dest = f.dest;
    std::vector<std::size_t> pre;
    std::vector<FiniteRing> rings;
    for (const auto& v : dest.opens()) {
        pre.push_back(p.topology().require_open(f.preimage(v)));
        rings.push_back(p.section_ring(pre.back()));
    }
    std::map<PresheafOfRings::OpenPair, std::vector<Elem>> res;
    for (std::size_t a = 0; a < dest.open_count(); ++a)
        for (std::size_t b = 0; b < dest.open_count(); ++b)
            if (dest.open(b).is_subset_of(dest.open(a))) res[{a, b}] = p.restriction(pre[a], pre[b]);
    return PresheafOfRings(dest, std::move(rings), std::move(res));
}

}  // namespace finscheme

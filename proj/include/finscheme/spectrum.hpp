#pragma once

// Spec R with its Zariski topology, and the structure sheaf whose sections over
// U are the point-indexed tuples (s(p) in R_p) that are locally a single
// fraction r/f.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finscheme/localization.hpp"
#include "finscheme/sheaf.hpp"

namespace finscheme {

struct SpectrumSpace {
    FiniteRing ring;
    std::vector<PrimeIdeal> points;   // ascending bitmask order; point id = position
    std::vector<Ideal> ideals;        // every ideal of the ring
    Topology topology;                // over point ids
    std::vector<LocalizedRing> local_rings;  // R_p for each point

    std::size_t point_count() const { return points.size(); }
    PointSet all_points() const { return PointSet::full(points.size()); }
};

// V(a): the points whose prime contains a.
inline PointSet closed_subsets(const std::vector<PrimeIdeal>& points, const Ideal& a) {
    PointSet v(points.size());
    for (Elem i = 0; i < points.size(); ++i)
        if (a.members().is_subset_of(points[i].members())) v.insert(i);
    return v;
}

inline PointSet closed_subsets(const SpectrumSpace& sp, const Ideal& a) { return closed_subsets(sp.points, a); }

// Opens are generated by the complements Spec - V(a), a ranging over all ideals.
inline SpectrumSpace zariski_topology(const FiniteRing& r, const Guards& g = {}) {
    if (!r.commutative()) throw Error(ErrorCode::InvalidArgument, "Spec requires a commutative ring");
    SpectrumSpace sp;
    sp.ring = r;
    sp.ideals = enumerate_ideals(r, g);
    for (const auto& i : sp.ideals)
        if (is_prime_ideal(r, i)) sp.points.push_back(PrimeIdeal::unchecked(i.members()));
    const PointSet all = PointSet::full(sp.points.size());
    std::vector<PointSet> basis;
    for (const auto& a : sp.ideals) basis.push_back(all - closed_subsets(sp.points, a));
    sp.topology = generated_topology(all, basis);
    for (const auto& p : sp.points) sp.local_rings.push_back(local_ring_at(r, p, g));
    return sp;
}

// Per-point witness that a section is a single fraction near that point.
struct RegularityWitness {
    std::size_t neighborhood;  // open index in the Zariski topology
    Elem num;
    Elem den;
};

struct Section {
    PointSet domain;
    std::vector<Elem> values;                      // aligned with domain.members()
    std::vector<RegularityWitness> certificate;    // aligned with domain.members()
};

// Values are given by point id (entries outside the domain are ignored).
using PointValues = std::vector<Elem>;

inline bool frac_matches(const SpectrumSpace& sp, Elem q, Elem num, Elem den, Elem value) {
    const auto& lr = sp.local_rings[q];
    return lr.in_denominators(den) && lr.frac(num, den) == value;
}

// Least (r, f), in ascending (r, f) order, with f outside every prime of v and
// values(q) = r/f in R_q throughout v.
inline std::optional<std::pair<Elem, Elem>> is_locally_frac(const SpectrumSpace& sp, const PointValues& values,
                                                            const PointSet& v) {
    const auto pts = v.members();
    const std::size_t n = sp.ring.size();
    for (Elem num = 0; num < n; ++num)
        for (Elem den = 0; den < n; ++den) {
            bool ok = true;
            for (Elem q : pts) {
                ok = frac_matches(sp, q, num, den, values[q]);
                if (!ok) break;
            }
            if (ok) return std::pair{num, den};
        }
    return std::nullopt;
}

// For each point of u, the first open (in the topology's order) V with
// p in V, V within u that admits a locally-fraction witness.
inline std::optional<std::vector<RegularityWitness>> is_regular(const SpectrumSpace& sp, const PointValues& values,
                                                                const PointSet& u) {
    if (!sp.topology.is_open(u)) throw Error(ErrorCode::NotOpen, u.to_string() + " is not Zariski-open");
    std::vector<RegularityWitness> cert;
    const auto within = sp.topology.opens_within(u);
    for (Elem p : u.members()) {
        bool found = false;
        for (auto vi : within) {
            const auto& v = sp.topology.open(vi);
            if (!v.contains(p)) continue;
            if (auto w = is_locally_frac(sp, values, v)) {
                cert.push_back({vi, w->first, w->second});
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return cert;
}

// The ring of sections over one open, enumerated lexicographically over value
// tuples in point order.
struct SectionRing {
    PointSet domain;
    std::vector<Elem> points;                 // domain members, ascending
    std::vector<std::vector<Elem>> values;    // one tuple per section
    std::vector<std::vector<RegularityWitness>> certificates;
    FiniteRing ring;

    std::optional<Elem> index_of(const std::vector<Elem>& tuple) const {
        auto it = std::lower_bound(values.begin(), values.end(), tuple);
        if (it != values.end() && *it == tuple) return static_cast<Elem>(it - values.begin());
        return std::nullopt;
    }
    // Position of a point inside `points`.
    std::size_t slot(Elem p) const {
        auto it = std::lower_bound(points.begin(), points.end(), p);
        if (it == points.end() || *it != p) throw Error(ErrorCode::NotMember, "point outside the section domain");
        return static_cast<std::size_t>(it - points.begin());
    }
    Section section(Elem s) const {
        return {domain, values[s], certificates[s]};
    }
};

inline SectionRing sheaf_spec_sections(const SpectrumSpace& sp, const PointSet& u, const Guards& g = {}) {
    if (!sp.topology.is_open(u)) throw Error(ErrorCode::NotOpen, u.to_string() + " is not Zariski-open");
    SectionRing out;
    out.domain = u;
    out.points = u.members();
    std::uint64_t tuples = 1;
    for (Elem p : out.points) tuples = saturating_mul(tuples, sp.local_rings[p].size());
    if (tuples > g.max_sections) throw GuardError("value tuples over " + u.to_string(), tuples, g.max_sections);

    // Fraction tuples realizable on each candidate neighborhood, keyed by the
    // restricted tuple; the first (r, f) in ascending order is kept.
    const auto within = sp.topology.opens_within(u);
    std::map<std::size_t, std::map<std::vector<Elem>, std::pair<Elem, Elem>>> fractions;
    for (auto vi : within) {
        auto& table = fractions[vi];
        const auto pts = sp.topology.open(vi).members();
        for (Elem num = 0; num < sp.ring.size(); ++num)
            for (Elem den = 0; den < sp.ring.size(); ++den) {
                std::vector<Elem> key;
                bool ok = true;
                for (Elem q : pts) {
                    if (!sp.local_rings[q].in_denominators(den)) {
                        ok = false;
                        break;
                    }
                    key.push_back(sp.local_rings[q].frac(num, den));
                }
                if (ok) table.emplace(std::move(key), std::pair{num, den});
            }
    }

    std::vector<Elem> tuple(out.points.size(), 0);
    auto regular = [&](std::vector<RegularityWitness>& cert) {
        for (std::size_t k = 0; k < out.points.size(); ++k) {
            const Elem p = out.points[k];
            bool found = false;
            for (auto vi : within) {
                const auto& v = sp.topology.open(vi);
                if (!v.contains(p)) continue;
                std::vector<Elem> key;
                for (Elem q : v.members()) key.push_back(tuple[out.slot(q)]);
                const auto& table = fractions[vi];
                if (auto it = table.find(key); it != table.end()) {
                    cert.push_back({vi, it->second.first, it->second.second});
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    for (;;) {
        std::vector<RegularityWitness> cert;
        if (regular(cert)) {
            out.values.push_back(tuple);
            out.certificates.push_back(std::move(cert));
        }
        // Odometer increment, last point fastest, giving lexicographic order.
        bool carried_out = true;
        for (std::size_t k = out.points.size(); k-- > 0;) {
            if (++tuple[k] < sp.local_rings[out.points[k]].size()) {
                carried_out = false;
                break;
            }
            tuple[k] = 0;
        }
        if (carried_out) break;
    }

    const std::size_t m = out.values.size();
    std::vector<Elem> add(m * m), mul(m * m);
    auto lookup = [&](const std::vector<Elem>& t) {
        auto i = out.index_of(t);
        if (!i) throw std::logic_error("sections are not closed under pointwise operations");
        return *i;
    };
    std::vector<Elem> zero_t, one_t;
    for (Elem p : out.points) {
        zero_t.push_back(sp.local_rings[p].ring().zero());
        one_t.push_back(sp.local_rings[p].ring().one());
    }
    for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b) {
            std::vector<Elem> s(out.points.size()), t(out.points.size());
            for (std::size_t k = 0; k < out.points.size(); ++k) {
                const auto& lr = sp.local_rings[out.points[k]].ring();
                s[k] = lr.add(out.values[a][k], out.values[b][k]);
                t[k] = lr.mul(out.values[a][k], out.values[b][k]);
            }
            add[a * m + b] = lookup(s);
            mul[a * m + b] = lookup(t);
        }
    out.ring = FiniteRing::trusted(m, std::move(add), std::move(mul), lookup(zero_t), lookup(one_t), true);
    return out;
}

// Restriction of value tuples from u to v.
inline RingHom sheaf_spec_restrict(const SectionRing& on_u, const SectionRing& on_v) {
    if (!on_v.domain.is_subset_of(on_u.domain)) throw Error(ErrorCode::NotNested, "restriction target is not inside the source open");
    RingHom h{on_u.ring, on_v.ring, std::vector<Elem>(on_u.values.size())};
    for (Elem s = 0; s < on_u.values.size(); ++s) {
        std::vector<Elem> t;
        for (Elem p : on_v.points) t.push_back(on_u.values[s][on_u.slot(p)]);
        auto i = on_v.index_of(t);
        if (!i) throw std::logic_error("restriction of a regular section is not regular");
        h.map[s] = *i;
    }
    return h;
}

struct StructureSheaf {
    SpectrumSpace space;
    std::vector<SectionRing> sections;  // indexed by open index
    PresheafOfRings presheaf;

    const std::vector<LocalizedRing>& stalk_rings() const { return space.local_rings; }

    // s(p) for the section s over the open with index u.
    Elem value(std::size_t u, Elem s, Elem p) const { return sections[u].values[s][sections[u].slot(p)]; }
};

inline StructureSheaf structure_sheaf(const FiniteRing& r, const Guards& g = {}) {
    StructureSheaf out;
    out.space = zariski_topology(r, g);
    const auto& t = out.space.topology;
    std::vector<FiniteRing> rings;
    for (const auto& u : t.opens()) {
        out.sections.push_back(sheaf_spec_sections(out.space, u, g));
        rings.push_back(out.sections.back().ring);
    }
    std::map<PresheafOfRings::OpenPair, std::vector<Elem>> res;
    for (std::size_t u = 0; u < t.open_count(); ++u)
        for (std::size_t v = 0; v < t.open_count(); ++v)
            if (t.open(v).is_subset_of(t.open(u)))
                res[{u, v}] = sheaf_spec_restrict(out.sections[u], out.sections[v]).map;
    out.presheaf = PresheafOfRings(t, std::move(rings), std::move(res));
    return out;
}

}  // namespace finscheme

#pragma once

// Direct limits of a presheaf of rings over a downward-directed family of
// opens, and stalks as the special case of all neighborhoods of a point.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finscheme/sheaf.hpp"

namespace finscheme {

// An element of the disjoint union: (open index, section).
struct LimitPair {
    std::size_t open;
    Elem section;
    bool operator==(const LimitPair&) const = default;
};

class DirectedOpenFamily {
public:
    // Throws NotOpen for a non-open member and NotDirected for a pair without a
    // lower bound inside the family.
    DirectedOpenFamily(PresheafOfRings p, const std::vector<PointSet>& members) : presheaf_(std::move(p)) {
        if (members.empty()) throw Error(ErrorCode::InvalidArgument, "directed family must be nonempty");
        for (const auto& u : members) members_.push_back(presheaf_.topology().require_open(u));
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        for (auto u : members_)
            for (auto v : members_)
                if (!lower_bound_of(u, v))
                    throw Error(ErrorCode::NotDirected,
                                "no member below " + open(u).to_string() + " & " + open(v).to_string());
        by_mask_ = members_;
        std::sort(by_mask_.begin(), by_mask_.end(),
                  [&](std::size_t a, std::size_t b) { return open(a) < open(b); });
    }

    const PresheafOfRings& presheaf() const { return presheaf_; }
    const PointSet& open(std::size_t i) const { return presheaf_.open(i); }
    // Member open indices in topology order.
    const std::vector<std::size_t>& members() const { return members_; }
    // Member open indices in ascending bitmask order.
    const std::vector<std::size_t>& members_by_mask() const { return by_mask_; }
    bool is_member(std::size_t u) const { return std::binary_search(members_.begin(), members_.end(), u); }

    // Largest member within u & v, ties to the least bitmask.
    std::optional<std::size_t> lower_bound_of(std::size_t u, std::size_t v) const {
        const PointSet meet = open(u) & open(v);
        std::optional<std::size_t> best;
        for (auto w : members_) {
            if (!open(w).is_subset_of(meet)) continue;
            if (!best || open(w).count() > open(*best).count() ||
                (open(w).count() == open(*best).count() && open(w) < open(*best)))
                best = w;
        }
        return best;
    }

    std::size_t pair_count() const {
        std::size_t n = 0;
        for (auto u : members_) n += presheaf_.section_ring(u).size();
        return n;
    }

private:
    PresheafOfRings presheaf_;
    std::vector<std::size_t> members_;
    std::vector<std::size_t> by_mask_;
};

inline std::size_t get_lower_bound(const DirectedOpenFamily& fam, std::size_t u, std::size_t v) {
    if (!fam.is_member(u) || !fam.is_member(v)) throw Error(ErrorCode::NotMember, "both opens must be family members");
    auto w = fam.lower_bound_of(u, v);
    if (!w) throw Error(ErrorCode::NoLowerBound, "no member below " + fam.open(u).to_string() + " & " + fam.open(v).to_string());
    return *w;
}

// Some member W within U & V on which both sections restrict to the same element.
inline bool dl_equiv(const DirectedOpenFamily& fam, LimitPair x, LimitPair y) {
    const auto& p = fam.presheaf();
    const PointSet meet = fam.open(x.open) & fam.open(y.open);
    for (auto w : fam.members())
        if (fam.open(w).is_subset_of(meet) && p.restrict(x.open, w, x.section) == p.restrict(y.open, w, y.section))
            return true;
    return false;
}

class LimitRing {
public:
    const DirectedOpenFamily& family() const { return family_; }
    const FiniteRing& ring() const { return ring_; }
    std::size_t size() const { return ring_.size(); }
    // Least (open bitmask, section) representative of each class.
    const std::vector<LimitPair>& canonical() const { return reps_; }

    Elem class_of(std::size_t u, Elem s) const {
        auto it = class_of_.find(u);
        if (it == class_of_.end()) throw Error(ErrorCode::NotMember, family_.open(u).to_string() + " is not a family member");
        if (s >= it->second.size()) throw Error(ErrorCode::NotMember, "section index out of range");
        return it->second[s];
    }
    Elem class_of(LimitPair x) const { return class_of(x.open, x.section); }

    std::vector<LimitPair> all_pairs() const {
        std::vector<LimitPair> out;
        for (auto u : family_.members_by_mask())
            for (Elem s = 0; s < family_.presheaf().section_ring(u).size(); ++s) out.push_back({u, s});
        return out;
    }

    std::string describe(Elem cls) const {
        const auto& r = reps_[cls];
        return "[" + family_.open(r.open).to_string() + "," + std::to_string(r.section) + "]";
    }

    friend LimitRing direct_limit(const DirectedOpenFamily&, const Guards&);

private:
    explicit LimitRing(DirectedOpenFamily f) : family_(std::move(f)) {}

    DirectedOpenFamily family_;
    FiniteRing ring_;
    std::map<std::size_t, std::vector<Elem>> class_of_;
    std::vector<LimitPair> reps_;
};

// Sum or product of two pairs computed on their chosen lower bound.
inline LimitPair limit_op(const DirectedOpenFamily& fam, LimitPair x, LimitPair y, bool multiply, std::size_t w) {
    const auto& p = fam.presheaf();
    const auto& r = p.section_ring(w);
    const Elem a = p.restrict(x.open, w, x.section), b = p.restrict(y.open, w, y.section);
    return {w, multiply ? r.mul(a, b) : r.add(a, b)};
}

inline LimitRing direct_limit(const DirectedOpenFamily& fam, const Guards& g = {}) {
    const std::uint64_t npairs = fam.pair_count();
    if (npairs > g.max_sections) throw GuardError("direct-limit pairs", npairs, g.max_sections);
    LimitRing out(fam);
    for (auto u : fam.members()) out.class_of_[u].assign(fam.presheaf().section_ring(u).size(), 0);

    for (const auto& x : out.all_pairs()) {
        Elem cls = static_cast<Elem>(out.reps_.size());
        for (Elem c = 0; c < out.reps_.size(); ++c)
            if (dl_equiv(fam, out.reps_[c], x)) {
                cls = c;
                break;
            }
        if (cls == out.reps_.size()) out.reps_.push_back(x);
        out.class_of_[x.open][x.section] = cls;
    }

    const std::size_t m = out.reps_.size();
    RawRing raw;
    raw.size = m;
    raw.add.assign(m, std::vector<Elem>(m));
    raw.mul.assign(m, std::vector<Elem>(m));
    for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b) {
            const auto x = out.reps_[a], y = out.reps_[b];
            const std::size_t w = get_lower_bound(fam, x.open, y.open);
            raw.add[a][b] = out.class_of(limit_op(fam, x, y, false, w));
            raw.mul[a][b] = out.class_of(limit_op(fam, x, y, true, w));
        }
    const std::size_t v = fam.members().front();
    raw.zero = out.class_of(v, fam.presheaf().section_ring(v).zero());
    raw.one = out.class_of(v, fam.presheaf().section_ring(v).one());
    raw.require_commutative = false;
    out.ring_ = validate_ring(raw);
    return out;
}

inline Elem canonical_fun(const LimitRing& lr, std::size_t u, Elem x) { return lr.class_of(u, x); }

inline RingHom canonical_hom(const LimitRing& lr, std::size_t u) {
    const auto& src = lr.family().presheaf().section_ring(u);
    RingHom h{src, lr.ring(), std::vector<Elem>(src.size())};
    for (Elem x = 0; x < src.size(); ++x) h.map[x] = canonical_fun(lr, u, x);
    return h;
}

// Equivalence-relation laws for dl_equiv, representative independence of the
// class tables over every lower bound, member independence of zero and one,
// and canonical_fun as a ring map for every member.
inline CheckReport check_limit_ring(const LimitRing& lr, const Guards& g = {}) {
    CheckReport rep;
    const auto& fam = lr.family();
    const auto pairs = lr.all_pairs();
    const std::uint64_t work = saturating_mul(pairs.size(), pairs.size());

    if (work > g.max_sections * std::uint64_t{64}) {
        rep.skip("dl_equiv_equivalence", "pair count " + std::to_string(pairs.size()) + " over guard", "direct_lim.rel");
        rep.skip("representative_independence", "pair count over guard", "direct_lim_is_ring");
    } else {
        Verdict eq = Verdict::pass("exhaustive over " + std::to_string(pairs.size()) + " pairs");
        auto str = [&](LimitPair x) { return "(" + fam.open(x.open).to_string() + "," + std::to_string(x.section) + ")"; };
        for (const auto& x : pairs) {
            if (!dl_equiv(fam, x, x)) {
                eq = Verdict::fail("not reflexive at " + str(x));
                break;
            }
            for (const auto& y : pairs) {
                const bool xy = dl_equiv(fam, x, y);
                if (xy != dl_equiv(fam, y, x)) eq = Verdict::fail("not symmetric at " + str(x) + " " + str(y));
                // Transitivity through classes: related pairs must share a class.
                if (xy != (lr.class_of(x) == lr.class_of(y))) eq = Verdict::fail("not transitive around " + str(x) + " " + str(y));
                if (!eq) break;
            }
            if (!eq) break;
        }
        rep.add("dl_equiv_equivalence", eq, "direct_lim.rel");

        Verdict indep = Verdict::pass();
        for (const auto& x : pairs) {
            for (const auto& y : pairs) {
                const PointSet meet = fam.open(x.open) & fam.open(y.open);
                for (auto w : fam.members()) {
                    if (!fam.open(w).is_subset_of(meet)) continue;
                    const Elem s = lr.class_of(limit_op(fam, x, y, false, w));
                    const Elem p = lr.class_of(limit_op(fam, x, y, true, w));
                    if (s != lr.ring().add(lr.class_of(x), lr.class_of(y)) || p != lr.ring().mul(lr.class_of(x), lr.class_of(y))) {
                        indep = Verdict::fail("representatives " + str(x) + " " + str(y) + " via " + fam.open(w).to_string());
                        break;
                    }
                }
                if (!indep) break;
            }
            if (!indep) break;
        }
        rep.add("representative_independence", indep, "direct_lim_is_ring");
    }

    Verdict units = Verdict::pass();
    for (auto u : fam.members()) {
        const auto& r = fam.presheaf().section_ring(u);
        if (lr.class_of(u, r.zero()) != lr.ring().zero() || lr.class_of(u, r.one()) != lr.ring().one()) {
            units = Verdict::fail("zero or one class differs on member " + fam.open(u).to_string());
            break;
        }
    }
    rep.add("zero_one_member_independent", units, "direct_lim_is_ring");

    Verdict canon = Verdict::pass();
    for (auto u : fam.members())
        if (auto v = check_ring_hom(canonical_hom(lr, u)); !v) {
            canon = Verdict::fail("member " + fam.open(u).to_string() + ": " + v.witness);
            break;
        }
    rep.add("canonical_fun_is_hom", canon, "canonical_fun");
    return rep;
}

struct UniversalityWitness {
    FiniteRing target_ring;
    std::map<std::size_t, RingHom> hom_family;  // member open index -> psi_U
};

struct UniversalMap {
    RingHom map;
    CheckReport report;  // well_defined, is_hom, triangles, uniqueness
    bool unique = false;
};

// u(class) = psi_U(s) for the canonical representative (U, s).
inline UniversalMap universal_map(const LimitRing& lr, const UniversalityWitness& w) {
    const auto& fam = lr.family();
    const auto& p = fam.presheaf();
    for (auto u : fam.members()) {
        auto it = w.hom_family.find(u);
        if (it == w.hom_family.end()) throw Error(ErrorCode::InvalidArgument, "no map for member " + fam.open(u).to_string());
        if (auto v = check_ring_hom(it->second.map, p.section_ring(u), w.target_ring); !v)
            throw Error(ErrorCode::InvalidArgument, "map for member " + fam.open(u).to_string() + ": " + v.witness);
    }
    for (auto u : fam.members())
        for (auto v : fam.members()) {
            if (!fam.open(v).is_subset_of(fam.open(u))) continue;
            for (Elem x = 0; x < p.section_ring(u).size(); ++x)
                if (w.hom_family.at(v)(p.restrict(u, v, x)) != w.hom_family.at(u)(x))
                    throw Error(ErrorCode::IncompatibleFamily,
                                "psi" + fam.open(v).to_string() + " o rho" + p.describe_pair(u, v) +
                                    " differs from psi" + fam.open(u).to_string() + " at " + std::to_string(x));
        }

    UniversalMap out{RingHom{lr.ring(), w.target_ring, std::vector<Elem>(lr.size())}, {}, false};
    for (Elem c = 0; c < lr.size(); ++c) {
        const auto& r = lr.canonical()[c];
        out.map.map[c] = w.hom_family.at(r.open)(r.section);
    }

    Verdict wd = Verdict::pass();
    for (const auto& x : lr.all_pairs())
        if (w.hom_family.at(x.open)(x.section) != out.map(lr.class_of(x))) {
            wd = Verdict::fail("representative (" + fam.open(x.open).to_string() + "," + std::to_string(x.section) + ")");
            break;
        }
    out.report.add("well_defined", wd, "universal_property");
    out.report.add("is_hom", check_ring_hom(out.map), "universal_property");

    Verdict tri = Verdict::pass();
    for (auto u : fam.members()) {
        const auto c = canonical_hom(lr, u);
        for (Elem x = 0; x < c.map.size() && tri; ++x)
            if (out.map(c(x)) != w.hom_family.at(u)(x))
                tri = Verdict::fail("triangle at member " + fam.open(u).to_string() + ", section " + std::to_string(x));
    }
    out.report.add("triangles", tri, "universal_property");

    // Any map satisfying the triangles is pinned on every canonical_fun image;
    // uniqueness holds when those images cover the limit.
    std::vector<bool> hit(lr.size(), false);
    for (const auto& x : lr.all_pairs()) hit[lr.class_of(x)] = true;
    const bool covered = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    out.report.add("uniqueness", covered ? Verdict::pass("every class is a canonical_fun image") : Verdict::fail("some class has no representative"),
                   "universal_property");
    out.unique = covered && out.report.passed();
    return out;
}

using Stalk = LimitRing;

inline std::vector<PointSet> neighborhoods(const Topology& t, Elem x) {
    std::vector<PointSet> out;
    for (const auto& u : t.opens())
        if (u.contains(x)) out.push_back(u);
    return out;
}

inline Stalk stalk_at(const PresheafOfRings& p, Elem x, const Guards& g = {}) {
    if (!p.topology().carrier().contains(x)) throw Error(ErrorCode::NotMember, "point " + std::to_string(x) + " is not in the carrier");
    return direct_limit(DirectedOpenFamily(p, neighborhoods(p.topology(), x)), g);
}

}  // namespace finscheme

#pragma once

// Finite topological spaces given by an explicit family of open sets. Points
// are ids in a universe {0..n-1}; the carrier is a subset of that universe so
// that subspaces keep the ids of the ambient space.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "finscheme/element_set.hpp"
#include "finscheme/errors.hpp"
#include "finscheme/report.hpp"

namespace finscheme {

using PointSet = ElementSet;

inline std::vector<PointSet> normalize_family(std::vector<PointSet> fam) {
    std::sort(fam.begin(), fam.end(), size_then_mask_less);
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return fam;
}

inline Verdict check_topological_space(const PointSet& carrier, const std::vector<PointSet>& opens);

class Topology {
public:
    Topology() : Topology(PointSet(0), {PointSet(0)}) {}

    // Validates the axioms; throws Error(InvalidArgument) with the witness.
    Topology(PointSet carrier, std::vector<PointSet> opens)
        : carrier_(std::move(carrier)), opens_(normalize_family(std::move(opens))) {
        if (auto v = check_topological_space(carrier_, opens_); !v)
            throw Error(ErrorCode::InvalidArgument, "not a topology: " + v.witness);
    }

    std::size_t universe() const { return carrier_.universe(); }
    const PointSet& carrier() const { return carrier_; }
    const std::vector<PointSet>& opens() const { return opens_; }
    std::size_t open_count() const { return opens_.size(); }
    const PointSet& open(std::size_t i) const { return opens_[i]; }

    std::optional<std::size_t> index_of(const PointSet& u) const {
        auto it = std::lower_bound(opens_.begin(), opens_.end(), u, size_then_mask_less);
        if (it != opens_.end() && *it == u) return static_cast<std::size_t>(it - opens_.begin());
        return std::nullopt;
    }
    std::size_t require_open(const PointSet& u) const {
        auto i = index_of(u);
        if (!i) throw Error(ErrorCode::NotOpen, u.to_string() + " is not open");
        return *i;
    }
    bool is_open(const PointSet& u) const { return index_of(u).has_value(); }

    std::size_t empty_index() const { return 0; }
    std::size_t carrier_index() const { return require_open(carrier_); }

    // Opens of the form V with V a subset of u.
    std::vector<std::size_t> opens_within(const PointSet& u) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < opens_.size(); ++i)
            if (opens_[i].is_subset_of(u)) out.push_back(i);
        return out;
    }

    bool operator==(const Topology& o) const { return carrier_ == o.carrier_ && opens_ == o.opens_; }

private:
    PointSet carrier_;
    std::vector<PointSet> opens_;
};

// Whole space and empty set open, opens within the carrier, closure under
// binary intersection and under unions of subfamilies. Unions are checked over
// every subfamily when there are at most 16 opens, otherwise over all pairs
// plus a fixed-seed random sample of subfamilies; the detail string says which.
inline Verdict check_topological_space(const PointSet& carrier, const std::vector<PointSet>& opens) {
    auto contains = [&](const PointSet& s) { return std::find(opens.begin(), opens.end(), s) != opens.end(); };
    if (!contains(carrier)) return Verdict::fail("carrier " + carrier.to_string() + " not open");
    if (!contains(PointSet(carrier.universe()))) return Verdict::fail("empty set not open");
    for (const auto& o : opens)
        if (!o.is_subset_of(carrier)) return Verdict::fail("open " + o.to_string() + " not within carrier");
    for (const auto& a : opens)
        for (const auto& b : opens)
            if (!contains(a & b))
                return Verdict::fail("intersection " + a.to_string() + " & " + b.to_string() + " missing");

    const std::size_t k = opens.size();
    auto union_of = [&](auto&& pick) {
        PointSet u(carrier.universe());
        for (std::size_t i = 0; i < k; ++i)
            if (pick(i)) u = u | opens[i];
        return u;
    };
    auto describe = [&](auto&& pick) {
        std::string s;
        for (std::size_t i = 0; i < k; ++i)
            if (pick(i)) s += (s.empty() ? "" : " | ") + opens[i].to_string();
        return "union " + s + " missing";
    };
    if (k <= 16) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
            auto pick = [m](std::size_t i) { return ((m >> i) & 1U) != 0; };
            if (!contains(union_of(pick))) return Verdict::fail(describe(pick));
        }
        return Verdict::pass("unions: exhaustive over " + std::to_string(std::uint64_t{1} << k) + " subfamilies");
    }
    for (const auto& a : opens)
        for (const auto& b : opens)
            if (!contains(a | b)) return Verdict::fail("union " + a.to_string() + " | " + b.to_string() + " missing");
    std::mt19937_64 rng(0x5eedULL);
    constexpr int samples = 1024;
    for (int t = 0; t < samples; ++t) {
        const std::uint64_t bits = rng();
        std::vector<bool> chosen(k);
        for (std::size_t i = 0; i < k; ++i) chosen[i] = ((rng() ^ bits) & 1U) != 0;
        auto pick = [&chosen](std::size_t i) { return chosen[i]; };
        if (!contains(union_of(pick))) return Verdict::fail(describe(pick));
    }
    return Verdict::pass("unions: all pairs plus " + std::to_string(samples) + " sampled subfamilies");
}

// Least topology on `carrier` containing the basis members that lie within it.
inline Topology generated_topology(const PointSet& carrier, const std::vector<PointSet>& basis) {
    std::vector<PointSet> fam{PointSet(carrier.universe()), carrier};
    for (const auto& b : basis)
        if (b.is_subset_of(carrier)) fam.push_back(b);
    fam = normalize_family(std::move(fam));
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t k = fam.size();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                for (const PointSet& c : {fam[i] & fam[j], fam[i] | fam[j]})
                    if (std::find(fam.begin(), fam.end(), c) == fam.end()) {
                        fam.push_back(c);
                        changed = true;
                    }
        fam = normalize_family(std::move(fam));
    }
    return Topology(carrier, std::move(fam));
}

inline Topology discrete_topology(std::size_t n) {
    std::vector<PointSet> fam;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) fam.push_back(PointSet::from_mask(n, m));
    return Topology(PointSet::full(n), std::move(fam));
}

inline Topology indiscrete_topology(std::size_t n) {
    return Topology(PointSet::full(n), {PointSet(n), PointSet::full(n)});
}

inline Topology induced_topology(const Topology& t, const PointSet& u) {
    if (!u.is_subset_of(t.carrier()))
        throw Error(ErrorCode::NotSubset, u.to_string() + " is not within the carrier");
    std::vector<PointSet> fam;
    for (const auto& v : t.opens()) fam.push_back(u & v);
    return Topology(u, std::move(fam));
}

struct Cover {
    Topology space;
    PointSet target;
    std::vector<PointSet> parts;  // index set is {0..parts.size()-1}
};

inline Verdict check_cover(const Cover& c, bool require_open_parts, bool require_open_target) {
    if (!c.target.is_subset_of(c.space.carrier())) return Verdict::fail("target not within carrier");
    PointSet u(c.space.universe());
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (!c.parts[i].is_subset_of(c.space.carrier()))
            return Verdict::fail("part " + std::to_string(i) + " not within carrier");
        if (require_open_parts && !c.space.is_open(c.parts[i]))
            return Verdict::fail("part " + std::to_string(i) + " " + c.parts[i].to_string() + " not open");
        u = u | c.parts[i];
    }
    if (require_open_target && !c.space.is_open(c.target)) return Verdict::fail("target not open");
    if (!c.target.is_subset_of(u))
        return Verdict::fail("points " + (c.target - u).to_string() + " not covered");
    return Verdict::pass();
}

struct ContinuousMap {
    Topology source;
    Topology dest;
    std::vector<Elem> map;  // indexed by source point id

    PointSet preimage(const PointSet& v) const {
        PointSet out(source.universe());
        for (Elem x : source.carrier().members())
            if (v.contains(map[x])) out.insert(x);
        return out;
    }
    PointSet image(const PointSet& u) const {
        PointSet out(dest.universe());
        for (Elem x : u.members()) out.insert(map[x]);
        return out;
    }
};

inline Verdict check_map_total(const ContinuousMap& m) {
    if (m.map.size() != m.source.universe()) return Verdict::fail("map table does not cover the source universe");
    for (Elem x : m.source.carrier().members())
        if (!m.dest.carrier().contains(m.map[x]))
            return Verdict::fail("point " + std::to_string(x) + " maps outside the destination carrier");
    return Verdict::pass();
}

inline Verdict check_continuous(const ContinuousMap& m) {
    if (auto v = check_map_total(m); !v) return v;
    for (const auto& v : m.dest.opens()) {
        const PointSet pre = m.preimage(v);
        if (!m.source.is_open(pre))
            return Verdict::fail("preimage " + pre.to_string() + " of open " + v.to_string() + " is not open");
    }
    return Verdict::pass();
}

inline std::optional<ContinuousMap> inverse_map(const ContinuousMap& m) {
    if (!check_map_total(m)) return std::nullopt;
    if (m.source.carrier().count() != m.dest.carrier().count()) return std::nullopt;
    ContinuousMap inv{m.dest, m.source, std::vector<Elem>(m.dest.universe(), 0)};
    PointSet hit(m.dest.universe());
    for (Elem x : m.source.carrier().members()) {
        if (hit.contains(m.map[x])) return std::nullopt;
        hit.insert(m.map[x]);
        inv.map[m.map[x]] = x;
    }
    return inv;
}

inline Verdict check_homeomorphism(const ContinuousMap& m) {
    if (auto v = check_continuous(m); !v) return v;
    auto inv = inverse_map(m);
    if (!inv) return Verdict::fail("map is not bijective");
    if (auto v = check_continuous(*inv); !v) return Verdict::fail("inverse not continuous: " + v.witness);
    return Verdict::pass();
}

inline ContinuousMap identity_map(const Topology& t) {
    ContinuousMap m{t, t, std::vector<Elem>(t.universe())};
    for (Elem x = 0; x < t.universe(); ++x) m.map[x] = x;
    return m;
}

inline ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
    ContinuousMap out{f.source, g.dest, std::vector<Elem>(f.map.size(), 0)};
    for (Elem x : f.source.carrier().members()) out.map[x] = g.map[f.map[x]];
    return out;
}

}  // namespace finscheme

#pragma once

// Brute-force reference computations. They share no code with the library
// beyond the FiniteRing table accessors and work on raw 64-bit masks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "finscheme/ring.hpp"

namespace oracle {

using Mask = std::uint64_t;
using finscheme::Elem;
using finscheme::FiniteRing;

inline bool has(Mask m, Elem e) { return (m >> e) & 1U; }

inline std::vector<Elem> bits(Mask m) {
    std::vector<Elem> out;
    for (Elem e = 0; m >> e; ++e)
        if (has(m, e)) out.push_back(e);
    return out;
}

// Every subset of the carrier that is an additive subgroup absorbing
// multiplication on both sides, in ascending mask order.
inline std::vector<Mask> ideals(const FiniteRing& r) {
    const std::size_t n = r.size();
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (!has(m, r.zero())) continue;
        bool ok = true;
        for (Elem a = 0; a < n && ok; ++a) {
            if (!has(m, a)) continue;
            for (Elem b = 0; b < n && ok; ++b) {
                if (has(m, b) && !has(m, r.add(a, b))) ok = false;
                if (!has(m, r.mul(a, b)) || !has(m, r.mul(b, a))) ok = false;
            }
        }
        if (ok) out.push_back(m);
    }
    return out;
}

inline Mask full(const FiniteRing& r) { return (Mask{1} << r.size()) - 1; }

inline std::vector<Mask> primes(const FiniteRing& r) {
    std::vector<Mask> out;
    for (Mask m : ideals(r)) {
        if (m == full(r)) continue;
        bool ok = true;
        for (Elem a = 0; a < r.size() && ok; ++a)
            for (Elem b = 0; b < r.size() && ok; ++b)
                if (has(m, r.mul(a, b)) && !has(m, a) && !has(m, b)) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

inline std::vector<Mask> maximals(const FiniteRing& r) {
    const auto all = ideals(r);
    std::vector<Mask> out;
    for (Mask m : all) {
        if (m == full(r)) continue;
        bool top = true;
        for (Mask j : all)
            if (j != full(r) && j != m && (m & j) == m) top = false;
        if (top) out.push_back(m);
    }
    return out;
}

// Primes of Z/n by number theory: for each prime q | n, the multiples of q.
inline std::vector<Mask> zmod_primes(std::size_t n) {
    std::vector<Mask> out;
    for (std::size_t q = 2; q <= n; ++q) {
        bool prime = true;
        for (std::size_t d = 2; d * d <= q; ++d) prime = prime && q % d != 0;
        if (!prime || n % q != 0) continue;
        Mask m = 0;
        for (std::size_t k = 0; k < n; k += q) m |= Mask{1} << k;
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// |Z/n localized at (q)| = q^v where q^v exactly divides n.
inline std::size_t zmod_local_size(std::size_t n, std::size_t q) {
    std::size_t s = 1;
    while (n % q == 0) {
        n /= q;
        s *= q;
    }
    return s;
}

// Class count of R x S under (a,s)~(b,t) iff u(ta - sb) = 0 for some u in S,
// via union-find over all pairs.
inline std::size_t localization_size(const FiniteRing& r, Mask s) {
    const auto den = bits(s);
    const std::size_t n = r.size();
    std::vector<std::size_t> parent(n * den.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < parent.size(); ++i)
        for (std::size_t j = i + 1; j < parent.size(); ++j) {
            const Elem a = static_cast<Elem>(i % n), sa = den[i / n];
            const Elem b = static_cast<Elem>(j % n), sb = den[j / n];
            const Elem diff = r.sub(r.mul(sb, a), r.mul(sa, b));
            for (Elem u : den)
                if (r.mul(u, diff) == r.zero()) {
                    parent[find(i)] = find(j);
                    break;
                }
        }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
    return roots.size();
}

// All unions of finite intersections of basis members inside the carrier,
// together with the empty set and the carrier: the generated topology.
inline std::set<Mask> generated_topology(Mask carrier, const std::vector<Mask>& basis) {
    std::vector<Mask> b;
    for (Mask x : basis)
        if ((x & carrier) == x) b.push_back(x);
    std::set<Mask> meets{carrier};
    for (Mask pick = 1; pick < (Mask{1} << b.size()); ++pick) {
        Mask m = carrier;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (has(pick, static_cast<Elem>(i))) m &= b[i];
        meets.insert(m);
    }
    const std::vector<Mask> mv(meets.begin(), meets.end());
    std::set<Mask> out{0, carrier};
    for (Mask pick = 1; pick < (Mask{1} << mv.size()); ++pick) {
        Mask u = 0;
        for (std::size_t i = 0; i < mv.size(); ++i)
            if (has(pick, static_cast<Elem>(i))) u |= mv[i];
        out.insert(u);
    }
    return out;
}

// Intersection of every topology on the carrier containing the basis, by
// scanning all families of subsets (feasible for carriers of at most 3 points).
inline std::set<Mask> least_topology(Mask carrier, const std::vector<Mask>& basis) {
    std::vector<Mask> subsets;
    for (Mask s = 0; s <= carrier; ++s)
        if ((s & carrier) == s) subsets.push_back(s);
    Mask must = 0;
    auto idx = [&](Mask s) { return static_cast<Elem>(std::find(subsets.begin(), subsets.end(), s) - subsets.begin()); };
    must |= Mask{1} << idx(0);
    must |= Mask{1} << idx(carrier);
    for (Mask x : basis)
        if ((x & carrier) == x) must |= Mask{1} << idx(x);
    Mask meet = (Mask{1} << subsets.size()) - 1;
    for (Mask fam = 0; fam < (Mask{1} << subsets.size()); ++fam) {
        if ((fam & must) != must) continue;
        bool top = true;
        for (std::size_t i = 0; i < subsets.size() && top; ++i)
            for (std::size_t j = 0; j < subsets.size() && top; ++j)
                if (has(fam, static_cast<Elem>(i)) && has(fam, static_cast<Elem>(j)))
                    top = has(fam, idx(subsets[i] & subsets[j])) && has(fam, idx(subsets[i] | subsets[j]));
        if (top) meet &= fam;
    }
    std::set<Mask> out;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (has(meet, static_cast<Elem>(i))) out.insert(subsets[i]);
    return out;
}

// Isomorphism by depth-first search over partial bijections on 0..x, rejecting
// a branch once a sum or product of assigned elements is itself assigned to the
// wrong image.
inline bool isomorphic(const FiniteRing& a, const FiniteRing& b) {
    const std::size_t n = a.size();
    if (n != b.size()) return false;
    const Elem none = static_cast<Elem>(n);
    std::vector<Elem> img(n, none);
    std::vector<bool> used(n, false);
    auto consistent = [&](Elem x) {
        for (Elem u = 0; u <= x; ++u)
            for (Elem v = 0; v <= x; ++v) {
                const Elem s = a.add(u, v), m = a.mul(u, v);
                if (img[s] != none && img[s] != b.add(img[u], img[v])) return false;
                if (img[m] != none && img[m] != b.mul(img[u], img[v])) return false;
            }
        return true;
    };
    std::function<bool(Elem)> go = [&](Elem x) {
        if (x == n) return img[a.zero()] == b.zero() && img[a.one()] == b.one();
        for (Elem t = 0; t < n; ++t) {
            if (used[t]) continue;
            img[x] = t;
            used[t] = true;
            if (consistent(x) && go(x + 1)) return true;
            used[t] = false;
        }
        img[x] = none;
        return false;
    };
    return go(0);
}

}  // namespace oracle

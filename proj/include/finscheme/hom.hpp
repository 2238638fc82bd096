#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finscheme/ideal.hpp"

namespace finscheme {

struct RingHom {
    FiniteRing source;
    FiniteRing target;
    std::vector<Elem> map;

    Elem operator()(Elem x) const { return map[x]; }
};

inline Verdict check_ring_hom(const std::vector<Elem>& h, const FiniteRing& src, const FiniteRing& dst) {
    if (h.size() != src.size())
        return Verdict::fail("map has " + std::to_string(h.size()) + " entries, source has " +
                             std::to_string(src.size()));
    for (Elem x = 0; x < src.size(); ++x)
        if (h[x] >= dst.size()) return Verdict::fail("image of " + std::to_string(x) + " out of range");
    if (h[src.zero()] != dst.zero()) return Verdict::fail("zero not preserved");
    if (h[src.one()] != dst.one()) return Verdict::fail("one not preserved");
    for (Elem x = 0; x < src.size(); ++x)
        for (Elem y = 0; y < src.size(); ++y) {
            if (h[src.add(x, y)] != dst.add(h[x], h[y]))
                return Verdict::fail("addition not preserved at " + detail::pair_str(x, y));
            if (h[src.mul(x, y)] != dst.mul(h[x], h[y]))
                return Verdict::fail("multiplication not preserved at " + detail::pair_str(x, y));
        }
    return Verdict::pass();
}

inline Verdict check_ring_hom(const RingHom& h) { return check_ring_hom(h.map, h.source, h.target); }

inline RingHom identity_hom(const FiniteRing& r) {
    RingHom h{r, r, std::vector<Elem>(r.size())};
    for (Elem x = 0; x < r.size(); ++x) h.map[x] = x;
    return h;
}

// g after f.
inline RingHom compose(const RingHom& g, const RingHom& f) {
    if (f.target.size() != g.source.size())
        throw Error(ErrorCode::Mismatch, "composition of maps with incompatible rings");
    RingHom out{f.source, g.target, std::vector<Elem>(f.map.size())};
    for (std::size_t x = 0; x < f.map.size(); ++x) out.map[x] = g.map[f.map[x]];
    return out;
}

inline bool is_bijective(const std::vector<Elem>& h, std::size_t target_size) {
    if (h.size() != target_size) return false;
    std::vector<bool> hit(target_size, false);
    for (Elem y : h) {
        if (y >= target_size || hit[y]) return false;
        hit[y] = true;
    }
    return true;
}

inline std::optional<RingHom> inverse(const RingHom& h) {
    if (!is_bijective(h.map, h.target.size())) return std::nullopt;
    RingHom inv{h.target, h.source, std::vector<Elem>(h.map.size())};
    for (Elem x = 0; x < h.map.size(); ++x) inv.map[h.map[x]] = x;
    return inv;
}

namespace detail {

// Isomorphism-invariant fingerprint of an element, used to prune the search.
struct ElemSignature {
    std::size_t additive_order;
    std::size_t annihilator_size;
    std::size_t fixed_by_mul;  // |{y : x*y = y}|
    bool idempotent;
    bool unit;
    bool operator==(const ElemSignature&) const = default;
};

inline std::vector<ElemSignature> signatures(const FiniteRing& r) {
    std::vector<ElemSignature> out(r.size());
    for (Elem x = 0; x < r.size(); ++x) {
        ElemSignature s{1, 0, 0, r.mul(x, x) == x, false};
        for (Elem acc = x; acc != r.zero(); acc = r.add(acc, x)) ++s.additive_order;
        if (x == r.zero()) s.additive_order = 1;
        for (Elem y = 0; y < r.size(); ++y) {
            s.annihilator_size += r.mul(x, y) == r.zero() ? 1 : 0;
            s.fixed_by_mul += r.mul(x, y) == y ? 1 : 0;
            s.unit = s.unit || r.mul(x, y) == r.one();
        }
        out[x] = s;
    }
    return out;
}

}  // namespace detail

// Backtracking search for a bijective ring homomorphism a -> b. zero and one
// are pinned; remaining elements are assigned in ascending index order, each
// trying target candidates in ascending order. The first hit is returned.
inline std::optional<RingHom> ring_iso_search(const FiniteRing& a, const FiniteRing& b) {
    const std::size_t n = a.size();
    if (n != b.size()) return std::nullopt;
    const auto sa = detail::signatures(a);
    const auto sb = detail::signatures(b);

    constexpr Elem unset = static_cast<Elem>(-1);
    std::vector<Elem> h(n, unset);
    std::vector<bool> used(n, false);
    std::vector<Elem> assigned;  // domain elements in assignment order

    auto consistent = [&](Elem x) {
        for (Elem y : assigned) {
            for (auto [u, v] : {std::pair{x, y}, std::pair{y, x}}) {
                const Elem s = a.add(u, v);
                if (h[s] != unset && h[s] != b.add(h[u], h[v])) return false;
                const Elem p = a.mul(u, v);
                if (h[p] != unset && h[p] != b.mul(h[u], h[v])) return false;
            }
        }
        return true;
    };
    auto assign = [&](Elem x, Elem y) {
        if (used[y] || !(sa[x] == sb[y])) return false;
        h[x] = y;
        used[y] = true;
        assigned.push_back(x);
        if (consistent(x)) return true;
        assigned.pop_back();
        used[y] = false;
        h[x] = unset;
        return false;
    };
    auto unassign = [&](Elem x) {
        used[h[x]] = false;
        h[x] = unset;
        assigned.pop_back();
    };

    if (!assign(a.zero(), b.zero())) return std::nullopt;
    if (a.one() != a.zero()) {
        if (!assign(a.one(), b.one())) return std::nullopt;
    } else if (b.one() != b.zero()) {
        return std::nullopt;
    }

    std::vector<Elem> order;
    for (Elem x = 0; x < n; ++x)
        if (h[x] == unset) order.push_back(x);

    auto search = [&](auto&& self, std::size_t k) -> bool {
        if (k == order.size()) return true;
        const Elem x = order[k];
        for (Elem y = 0; y < n; ++y) {
            if (!assign(x, y)) continue;
            if (self(self, k + 1)) return true;
            unassign(x);
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;

    RingHom out{a, b, h};
    if (!check_ring_hom(out)) throw std::logic_error("ring_iso_search produced a non-homomorphism");
    return out;
}

// Preimage of the target's maximal ideal must equal the source's maximal ideal.
inline Verdict is_local_hom(const RingHom& h, const Guards& g = {}) {
    const auto la = check_local_ring(h.source, g);
    const auto lb = check_local_ring(h.target, g);
    if (!la.local) throw Error(ErrorCode::NotLocalRing, "source ring is not local");
    if (!lb.local) throw Error(ErrorCode::NotLocalRing, "target ring is not local");
    ElementSet pre = h.source.empty_set();
    for (Elem x = 0; x < h.source.size(); ++x)
        if (lb.maximal->contains(h.map[x])) pre.insert(x);
    if (pre == la.maximal->members()) return Verdict::pass("preimage " + pre.to_string());
    return Verdict::fail("preimage of maximal ideal " + pre.to_string() + " differs from " +
                         la.maximal->to_string());
}

}  // namespace finscheme

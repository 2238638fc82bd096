#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finscheme/report.hpp"
#include "finscheme/ring.hpp"

namespace finscheme {

namespace detail {
inline std::string pair_str(Elem a, Elem b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}
}  // namespace detail

// Validated subset wrappers. The validating factories throw
// Error(InvalidArgument) carrying the failed check's witness.
template <class Tag>
class ValidatedSubset {
public:
    const ElementSet& members() const { return members_; }
    bool contains(Elem e) const { return members_.contains(e); }
    std::size_t count() const { return members_.count(); }
    bool operator==(const ValidatedSubset& o) const { return members_ == o.members_; }
    auto operator<=>(const ValidatedSubset& o) const { return members_ <=> o.members_; }
    std::string to_string() const { return members_.to_string(); }

    static ValidatedSubset unchecked(ElementSet s) { return ValidatedSubset(std::move(s)); }

protected:
    explicit ValidatedSubset(ElementSet s) : members_(std::move(s)) {}
    ElementSet members_;
};

struct IdealTag {};
struct PrimeTag {};
struct MaximalTag {};
struct SubmonoidTag {};

using Ideal = ValidatedSubset<IdealTag>;
using PrimeIdeal = ValidatedSubset<PrimeTag>;
using MaximalIdeal = ValidatedSubset<MaximalTag>;
using Submonoid = ValidatedSubset<SubmonoidTag>;

inline Ideal as_ideal(const PrimeIdeal& p) { return Ideal::unchecked(p.members()); }
inline Ideal as_ideal(const MaximalIdeal& m) { return Ideal::unchecked(m.members()); }

// Additive subgroup + two-sided absorption, exhaustively.
inline Verdict is_ideal(const FiniteRing& r, const ElementSet& s) {
    if (s.universe() != r.size()) return Verdict::fail("subset universe does not match ring size");
    if (!s.contains(r.zero())) return Verdict::fail("zero " + std::to_string(r.zero()) + " missing");
    const auto mem = s.members();
    for (Elem a : mem) {
        if (!s.contains(r.neg(a)))
            return Verdict::fail("additive inverse of " + std::to_string(a) + " missing");
        for (Elem b : mem)
            if (!s.contains(r.add(a, b)))
                return Verdict::fail("sum " + detail::pair_str(a, b) + " = " +
                                     std::to_string(r.add(a, b)) + " not in subset");
    }
    for (Elem x = 0; x < r.size(); ++x)
        for (Elem b : mem) {
            if (!s.contains(r.mul(x, b)))
                return Verdict::fail("product " + detail::pair_str(x, b) + " = " +
                                     std::to_string(r.mul(x, b)) + " not in subset");
            if (!s.contains(r.mul(b, x)))
                return Verdict::fail("product " + detail::pair_str(b, x) + " = " +
                                     std::to_string(r.mul(b, x)) + " not in subset");
        }
    return Verdict::pass();
}

inline Ideal make_ideal(const FiniteRing& r, const ElementSet& s) {
    if (auto v = is_ideal(r, s); !v) throw Error(ErrorCode::InvalidArgument, "not an ideal: " + v.witness);
    return Ideal::unchecked(s);
}

// Additive subgroup generated by `gens` (in a finite group, closure under +
// of a set containing zero).
inline ElementSet additive_closure(const FiniteRing& r, const ElementSet& gens) {
    ElementSet out = gens;
    out.insert(r.zero());
    std::vector<Elem> frontier = out.members();
    const auto base = frontier;
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (Elem a : frontier)
            for (Elem g : base) {
                const Elem s = r.add(a, g);
                if (!out.contains(s)) {
                    out.insert(s);
                    next.push_back(s);
                }
            }
        frontier = std::move(next);
    }
    return out;
}

// Smallest two-sided ideal containing `gens`.
inline Ideal ideal_generated(const FiniteRing& r, const ElementSet& gens) {
    ElementSet cur = gens;
    cur.insert(r.zero());
    for (;;) {
        ElementSet next = cur;
        for (Elem a : cur.members())
            for (Elem x = 0; x < r.size(); ++x) {
                next.insert(r.mul(x, a));
                next.insert(r.mul(a, x));
            }
        next = additive_closure(r, next);
        if (next == cur) return Ideal::unchecked(cur);
        cur = std::move(next);
    }
}

// The additive subgroup generated by all products x*y, x in a, y in b.
inline Ideal ideal_gen_by_prod(const FiniteRing& r, const Ideal& a, const Ideal& b) {
    ElementSet products = r.empty_set();
    for (Elem x : a.members().members())
        for (Elem y : b.members().members()) products.insert(r.mul(x, y));
    return Ideal::unchecked(additive_closure(r, products));
}

inline Ideal sum_of_ideals(const FiniteRing& r, const std::vector<Ideal>& family) {
    if (family.empty()) throw Error(ErrorCode::InvalidArgument, "sum of an empty family of ideals");
    ElementSet u = r.empty_set();
    for (const auto& i : family) u = u | i.members();
    return Ideal::unchecked(additive_closure(r, u));
}

inline Verdict is_prime_ideal(const FiniteRing& r, const Ideal& i) {
    if (i.count() == r.size()) return Verdict::fail("Proper: ideal equals the whole ring");
    for (Elem x = 0; x < r.size(); ++x) {
        if (i.contains(x)) continue;
        for (Elem y = 0; y < r.size(); ++y)
            if (!i.contains(y) && i.contains(r.mul(x, y)))
                return Verdict::fail(detail::pair_str(x, y));
    }
    return Verdict::pass();
}

inline PrimeIdeal make_prime_ideal(const FiniteRing& r, const Ideal& i) {
    if (auto v = is_prime_ideal(r, i); !v)
        throw Error(ErrorCode::InvalidArgument, "not a prime ideal: " + v.witness);
    return PrimeIdeal::unchecked(i.members());
}

inline void guard_subsets(const FiniteRing& r, const Guards& g) {
    const std::uint64_t candidates =
        r.size() >= 64 ? UINT64_MAX : (std::uint64_t{1} << r.size());
    if (candidates > g.max_subsets) throw GuardError("candidate subsets 2^" + std::to_string(r.size()), candidates, g.max_subsets);
}

// All two-sided ideals in ascending bitmask order. Ideals are reached by
// closing {0} under "adjoin one element and regenerate", which visits the
// same family a pruned subset scan would.
inline std::vector<Ideal> enumerate_ideals(const FiniteRing& r, const Guards& g = {}) {
    guard_subsets(r, g);
    std::set<ElementSet> seen;
    std::vector<ElementSet> work{ideal_generated(r, r.empty_set()).members()};
    seen.insert(work.front());
    while (!work.empty()) {
        ElementSet cur = work.back();
        work.pop_back();
        for (Elem x = 0; x < r.size(); ++x) {
            if (cur.contains(x)) continue;
            ElementSet grown = cur;
            grown.insert(x);
            ElementSet next = ideal_generated(r, grown).members();
            if (seen.insert(next).second) work.push_back(std::move(next));
        }
    }
    std::vector<Ideal> out;
    for (const auto& s : seen) out.push_back(Ideal::unchecked(s));
    return out;  // std::set iterates in ascending bitmask order
}

inline Verdict is_maximal_ideal(const FiniteRing& r, const Ideal& i, const Guards& g = {}) {
    if (i.count() == r.size()) return Verdict::fail("Proper: ideal equals the whole ring");
    for (const auto& j : enumerate_ideals(r, g)) {
        if (j.count() == r.size() || j.count() <= i.count()) continue;
        if (i.members().is_subset_of(j.members()))
            return Verdict::fail("strictly contained in proper ideal " + j.to_string());
    }
    return Verdict::pass();
}

inline std::vector<PrimeIdeal> enumerate_prime_ideals(const FiniteRing& r, const Guards& g = {}) {
    std::vector<PrimeIdeal> out;
    for (const auto& i : enumerate_ideals(r, g))
        if (is_prime_ideal(r, i)) out.push_back(PrimeIdeal::unchecked(i.members()));
    return out;
}

inline std::vector<MaximalIdeal> enumerate_maximal_ideals(const FiniteRing& r, const Guards& g = {}) {
    const auto all = enumerate_ideals(r, g);
    std::vector<MaximalIdeal> out;
    for (const auto& i : all) {
        if (i.count() == r.size()) continue;
        const bool dominated = std::any_of(all.begin(), all.end(), [&](const Ideal& j) {
            return j.count() != r.size() && j.count() > i.count() &&
                   i.members().is_subset_of(j.members());
        });
        if (!dominated) out.push_back(MaximalIdeal::unchecked(i.members()));
    }
    return out;
}

inline Verdict is_submonoid(const FiniteRing& r, const ElementSet& s) {
    if (!s.contains(r.one())) return Verdict::fail("one " + std::to_string(r.one()) + " missing");
    const auto mem = s.members();
    for (Elem a : mem)
        for (Elem b : mem)
            if (!s.contains(r.mul(a, b)))
                return Verdict::fail("product " + detail::pair_str(a, b) + " not in subset");
    return Verdict::pass();
}

inline Submonoid make_submonoid(const FiniteRing& r, const ElementSet& s) {
    if (auto v = is_submonoid(r, s); !v)
        throw Error(ErrorCode::InvalidArgument, "not a submonoid: " + v.witness);
    return Submonoid::unchecked(s);
}

// R \ p. Primality guarantees a submonoid; a failed validation is a bug.
inline Submonoid complement_submonoid(const FiniteRing& r, const PrimeIdeal& p) {
    const ElementSet s = p.members().complement();
    if (auto v = is_submonoid(r, s); !v)
        throw std::logic_error("complement of a prime ideal is not a submonoid: " + v.witness);
    return Submonoid::unchecked(s);
}

struct LocalRingCheck {
    bool local = false;
    std::optional<MaximalIdeal> maximal;     // the unique maximal ideal when local
    std::vector<MaximalIdeal> all_maximal;
};

inline LocalRingCheck check_local_ring(const FiniteRing& r, const Guards& g = {}) {
    LocalRingCheck c;
    c.all_maximal = enumerate_maximal_ideals(r, g);
    if (c.all_maximal.size() == 1) {
        c.local = true;
        c.maximal = c.all_maximal.front();
    }
    return c;
}

inline Verdict is_local_ring(const FiniteRing& r, const Guards& g = {}) {
    const auto c = check_local_ring(r, g);
    if (c.local) return Verdict::pass("maximal ideal " + c.maximal->to_string());
    std::string w = std::to_string(c.all_maximal.size()) + " maximal ideals";
    for (const auto& m : c.all_maximal) w += " " + m.to_string();
    return Verdict::fail(w);
}

// Always true for a maximal ideal; a failure indicates a bug upstream.
inline Verdict max_ideal_is_prime(const FiniteRing& r, const MaximalIdeal& m) {
    return is_prime_ideal(r, as_ideal(m));
}

}  // namespace finscheme

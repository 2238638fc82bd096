#pragma once

// Rings of fractions S^-1 R over a finite commutative ring. Pairs (r, s) with
// s in S are partitioned by the fraction relation; class-level operation
// tables are materialized once at construction.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "finscheme/hom.hpp"

namespace finscheme {

struct FracPair {
    Elem num;
    Elem den;
    auto operator<=>(const FracPair&) const = default;
};

struct FracClass {
    Elem rep_r;
    Elem rep_s;
};

// (x.num, x.den) ~ (y.num, y.den) iff some s1 in S kills y.den*x.num - x.den*y.num.
inline bool frac_equiv(const FiniteRing& r, const Submonoid& s, FracPair x, FracPair y) {
    const Elem diff = r.sub(r.mul(y.den, x.num), r.mul(x.den, y.num));
    for (Elem s1 : s.members().members())
        if (r.mul(s1, diff) == r.zero()) return true;
    return false;
}

class LocalizedRing {
public:
    const FiniteRing& base() const { return base_; }
    const Submonoid& submonoid() const { return submonoid_; }
    const FiniteRing& ring() const { return ring_; }
    std::size_t size() const { return ring_.size(); }
    const std::vector<FracClass>& canonical() const { return canonical_; }

    bool in_denominators(Elem s) const { return submonoid_.contains(s); }

    // Class index of r/s.
    Elem frac(Elem r, Elem s) const {
        if (r >= base_.size()) throw Error(ErrorCode::InvalidArgument, "numerator out of range");
        if (!in_denominators(s))
            throw Error(ErrorCode::SNotMember, std::to_string(s) + " is not in the submonoid");
        return class_of_pair_[r * base_.size() + s];
    }

    std::string describe(Elem cls) const {
        const auto& c = canonical_[cls];
        return std::to_string(c.rep_r) + "/" + std::to_string(c.rep_s);
    }

    // Recomputes sums and products from every representative of each class and
    // compares against the materialized tables.
    Verdict check_well_defined() const {
        const auto pairs = all_pairs();
        for (const auto& x : pairs)
            for (const auto& y : pairs) {
                const Elem cx = frac(x.num, x.den), cy = frac(y.num, y.den);
                const Elem den = base_.mul(x.den, y.den);
                const Elem sum = frac(base_.add(base_.mul(x.num, y.den), base_.mul(y.num, x.den)), den);
                const Elem prod = frac(base_.mul(x.num, y.num), den);
                if (sum != ring_.add(cx, cy) || prod != ring_.mul(cx, cy))
                    return Verdict::fail("representatives " + std::to_string(x.num) + "/" +
                                         std::to_string(x.den) + ", " + std::to_string(y.num) +
                                         "/" + std::to_string(y.den));
            }
        return Verdict::pass();
    }

    std::vector<FracPair> all_pairs() const {
        std::vector<FracPair> out;
        for (Elem d : submonoid_.members().members())
            for (Elem n = 0; n < base_.size(); ++n) out.push_back({n, d});
        return out;
    }

    friend LocalizedRing localize(const FiniteRing&, const Submonoid&, const Guards&);

private:
    LocalizedRing(FiniteRing base, Submonoid s) : base_(std::move(base)), submonoid_(std::move(s)) {}

    FiniteRing base_;
    Submonoid submonoid_;
    FiniteRing ring_;
    std::vector<Elem> class_of_pair_;  // indexed r * |R| + s; valid only for s in S
    std::vector<FracClass> canonical_;
};

inline LocalizedRing localize(const FiniteRing& r, const Submonoid& s, const Guards& g = {}) {
    if (!r.commutative()) throw Error(ErrorCode::InvalidArgument, "localization requires a commutative ring");
    if (auto v = is_submonoid(r, s.members()); !v)
        throw Error(ErrorCode::InvalidArgument, "not a submonoid: " + v.witness);
    const std::uint64_t npairs = saturating_mul(r.size(), s.count());
    if (npairs > g.max_sections) throw GuardError("fraction pairs", npairs, g.max_sections);

    LocalizedRing out(r, s);
    const std::size_t n = r.size();
    out.class_of_pair_.assign(n * n, static_cast<Elem>(-1));

    // Pairs visited in (s, then r) order, so the first member of each class is
    // its lexicographically least representative.
    std::vector<FracPair> reps;
    for (Elem d : s.members().members())
        for (Elem num = 0; num < n; ++num) {
            const FracPair p{num, d};
            Elem cls = static_cast<Elem>(reps.size());
            for (Elem c = 0; c < reps.size(); ++c)
                if (frac_equiv(r, s, reps[c], p)) {
                    cls = c;
                    break;
                }
            if (cls == reps.size()) reps.push_back(p);
            out.class_of_pair_[num * n + d] = cls;
        }

    const std::size_t m = reps.size();
    std::vector<Elem> add(m * m), mul(m * m);
    for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b) {
            const auto x = reps[a], y = reps[b];
            const Elem den = r.mul(x.den, y.den);
            add[a * m + b] = out.class_of_pair_[r.add(r.mul(x.num, y.den), r.mul(y.num, x.den)) * n + den];
            mul[a * m + b] = out.class_of_pair_[r.mul(x.num, y.num) * n + den];
        }
    const Elem zero = out.class_of_pair_[r.zero() * n + r.one()];
    const Elem one = out.class_of_pair_[r.one() * n + r.one()];

    RawRing raw;
    raw.size = m;
    raw.add.assign(m, std::vector<Elem>(m));
    raw.mul.assign(m, std::vector<Elem>(m));
    for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b) {
            raw.add[a][b] = add[a * m + b];
            raw.mul[a][b] = mul[a * m + b];
        }
    raw.zero = zero;
    raw.one = one;
    raw.require_commutative = true;
    out.ring_ = validate_ring(raw);

    for (const auto& p : reps) out.canonical_.push_back({p.num, p.den});
    return out;
}

inline LocalizedRing local_ring_at(const FiniteRing& r, const PrimeIdeal& p, const Guards& g = {}) {
    return localize(r, complement_submonoid(r, p), g);
}

}  // namespace finscheme

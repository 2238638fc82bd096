#pragma once

// Finite rings as explicit operation tables over the dense carrier {0..n-1}.
// All arithmetic goes through the tables; modular constructors only fill them.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "finscheme/element_set.hpp"
#include "finscheme/errors.hpp"

namespace finscheme {

// Unvalidated ring description. Tables are row-major size x size.
struct RawRing {
    std::size_t size = 0;
    std::vector<std::vector<Elem>> add;
    std::vector<std::vector<Elem>> mul;
    Elem zero = 0;
    Elem one = 0;
    bool require_commutative = false;
};

enum class AxiomKind { NotClosed, NotAssociative, NotCommutative, NoUnit, NoInverse, NotDistributive };

inline const char* to_string(AxiomKind k) {
    switch (k) {
        case AxiomKind::NotClosed: return "NotClosed";
        case AxiomKind::NotAssociative: return "NotAssociative";
        case AxiomKind::NotCommutative: return "NotCommutative";
        case AxiomKind::NoUnit: return "NoUnit";
        case AxiomKind::NoInverse: return "NoInverse";
        case AxiomKind::NotDistributive: return "NotDistributive";
    }
    return "?";
}

struct AxiomViolation {
    AxiomKind kind;
    std::string law;
    std::vector<Elem> witness;

    std::string describe() const {
        std::string s = std::string(to_string(kind)) + " (" + law + ") at (";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(witness[i]);
        }
        return s + ")";
    }
};

class RingAxiomError : public Error {
public:
    explicit RingAxiomError(std::vector<AxiomViolation> v)
        : Error(ErrorCode::RingAxioms, summarize(v)), violations_(std::move(v)) {}
    const std::vector<AxiomViolation>& violations() const noexcept { return violations_; }

private:
    static std::string summarize(const std::vector<AxiomViolation>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : "; ") + x.describe();
        return s;
    }
    std::vector<AxiomViolation> violations_;
};

class FiniteRing;
FiniteRing validate_ring(const RawRing& raw);

// Immutable, cheaply copyable handle to a validated ring.
class FiniteRing {
public:
    FiniteRing() : FiniteRing(trusted(1, {0}, {0}, 0, 0, true)) {}

    std::size_t size() const { return d_->size; }
    Elem zero() const { return d_->zero; }
    Elem one() const { return d_->one; }
    bool commutative() const { return d_->commutative; }

    Elem add(Elem a, Elem b) const { return d_->add[a * d_->size + b]; }
    Elem mul(Elem a, Elem b) const { return d_->mul[a * d_->size + b]; }
    Elem neg(Elem a) const { return d_->neg[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    ElementSet empty_set() const { return ElementSet(size()); }
    ElementSet carrier() const { return ElementSet::full(size()); }

    bool same_tables(const FiniteRing& o) const {
        return d_ == o.d_ || (d_->size == o.d_->size && d_->add == o.d_->add &&
                              d_->mul == o.d_->mul && d_->zero == o.d_->zero &&
                              d_->one == o.d_->one);
    }

    RawRing to_raw() const {
        RawRing r;
        r.size = size();
        r.add.assign(size(), std::vector<Elem>(size()));
        r.mul.assign(size(), std::vector<Elem>(size()));
        for (Elem a = 0; a < size(); ++a)
            for (Elem b = 0; b < size(); ++b) {
                r.add[a][b] = add(a, b);
                r.mul[a][b] = mul(a, b);
            }
        r.zero = zero();
        r.one = one();
        r.require_commutative = commutative();
        return r;
    }

    // Builds a ring from tables already known to satisfy the axioms (used by
    // constructors whose output is correct by construction).
    static FiniteRing trusted(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul,
                              Elem zero, Elem one, bool commutative) {
        auto d = std::make_shared<Data>();
        d->size = n;
        d->add = std::move(add);
        d->mul = std::move(mul);
        d->zero = zero;
        d->one = one;
        d->commutative = commutative;
        d->neg.assign(n, 0);
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                if (d->add[a * n + b] == zero) {
                    d->neg[a] = b;
                    break;
                }
        return FiniteRing(std::move(d));
    }

private:
    struct Data {
        std::size_t size = 0;
        std::vector<Elem> add, mul, neg;
        Elem zero = 0, one = 0;
        bool commutative = true;
    };
    explicit FiniteRing(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    std::shared_ptr<const Data> d_;
};

// Exhaustive scan of every ring axiom instance. Returns one violation (with the
// first witness found) per violated law; empty means the tables form a ring.
inline std::vector<AxiomViolation> check_ring_axioms(const RawRing& raw) {
    const std::size_t n = raw.size;
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "ring must have at least one element");
    if (raw.add.size() != n || raw.mul.size() != n)
        throw Error(ErrorCode::InvalidArgument, "tables must have `size` rows");
    for (std::size_t i = 0; i < n; ++i)
        if (raw.add[i].size() != n || raw.mul[i].size() != n)
            throw Error(ErrorCode::InvalidArgument,
                        "table row " + std::to_string(i) + " must have `size` entries");

    std::vector<AxiomViolation> out;
    auto in_range = [n](Elem e) { return e < n; };

    // Closure first: every other law reads table entries as indices.
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (!in_range(raw.add[a][b])) {
                out.push_back({AxiomKind::NotClosed, "add", {a, b}});
                return out;
            }
            if (!in_range(raw.mul[a][b])) {
                out.push_back({AxiomKind::NotClosed, "mul", {a, b}});
                return out;
            }
        }
    if (!in_range(raw.zero) || !in_range(raw.one)) {
        out.push_back({AxiomKind::NotClosed, "zero/one index", {raw.zero, raw.one}});
        return out;
    }

    const auto& A = raw.add;
    const auto& M = raw.mul;
    auto first = [&out](AxiomKind k, const char* law, std::vector<Elem> w, bool& seen) {
        if (!seen) {
            out.push_back({k, law, std::move(w)});
            seen = true;
        }
    };

    bool add_assoc = false, mul_assoc = false, left_dist = false, right_dist = false;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                if (A[A[a][b]][c] != A[a][A[b][c]])
                    first(AxiomKind::NotAssociative, "add", {a, b, c}, add_assoc);
                if (M[M[a][b]][c] != M[a][M[b][c]])
                    first(AxiomKind::NotAssociative, "mul", {a, b, c}, mul_assoc);
                if (M[a][A[b][c]] != A[M[a][b]][M[a][c]])
                    first(AxiomKind::NotDistributive, "left: a(b+c) = ab+ac", {a, b, c}, left_dist);
                if (M[A[b][c]][a] != A[M[b][a]][M[c][a]])
                    first(AxiomKind::NotDistributive, "right: (b+c)a = ba+ca", {a, b, c}, right_dist);
            }

    bool add_comm = false, zero_unit = false, one_unit = false, inverse = false, mul_comm = false;
    for (Elem a = 0; a < n; ++a) {
        if (A[raw.zero][a] != a || A[a][raw.zero] != a)
            first(AxiomKind::NoUnit, "zero is additive identity", {a}, zero_unit);
        if (M[raw.one][a] != a || M[a][raw.one] != a)
            first(AxiomKind::NoUnit, "one is multiplicative identity", {a}, one_unit);
        bool has_inv = false;
        for (Elem b = 0; b < n && !has_inv; ++b) has_inv = A[a][b] == raw.zero;
        if (!has_inv) first(AxiomKind::NoInverse, "additive inverse", {a}, inverse);
        for (Elem b = 0; b < n; ++b) {
            if (A[a][b] != A[b][a]) first(AxiomKind::NotCommutative, "add", {a, b}, add_comm);
            if (raw.require_commutative && M[a][b] != M[b][a])
                first(AxiomKind::NotCommutative, "mul", {a, b}, mul_comm);
        }
    }
    return out;
}

inline FiniteRing validate_ring(const RawRing& raw) {
    auto violations = check_ring_axioms(raw);
    if (!violations.empty()) throw RingAxiomError(std::move(violations));
    const std::size_t n = raw.size;
    std::vector<Elem> add(n * n), mul(n * n);
    bool comm = true;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            add[a * n + b] = raw.add[a][b];
            mul[a * n + b] = raw.mul[a][b];
            comm = comm && raw.mul[a][b] == raw.mul[b][a];
        }
    return FiniteRing::trusted(n, std::move(add), std::move(mul), raw.zero, raw.one, comm);
}

// Re-validate an existing ring handle against every axiom instance.
inline std::vector<AxiomViolation> check_ring_axioms(const FiniteRing& r, bool require_commutative) {
    RawRing raw = r.to_raw();
    raw.require_commutative = require_commutative;
    return check_ring_axioms(raw);
}

inline FiniteRing zmod(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "zmod(0) is not a finite ring");
    std::vector<Elem> add(n * n), mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            add[a * n + b] = static_cast<Elem>((a + b) % n);
            mul[a * n + b] = static_cast<Elem>((a * b) % n);
        }
    return FiniteRing::trusted(n, std::move(add), std::move(mul), 0, static_cast<Elem>(1 % n), true);
}

// Componentwise product; the pair (i, j) has index i * b.size() + j.
inline FiniteRing product_ring(const FiniteRing& a, const FiniteRing& b, const Guards& guards = {}) {
    const std::uint64_t n64 = saturating_mul(a.size(), b.size());
    if (n64 > guards.max_ring_size)
        throw GuardError("product ring size", n64, guards.max_ring_size);
    const std::size_t n = static_cast<std::size_t>(n64);
    const std::size_t m = b.size();
    auto pack = [m](Elem i, Elem j) { return static_cast<Elem>(i * m + j); };
    std::vector<Elem> add(n * n), mul(n * n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const Elem xi = x / m, xj = x % m, yi = y / m, yj = y % m;
            add[x * n + y] = pack(a.add(xi, yi), b.add(xj, yj));
            mul[x * n + y] = pack(a.mul(xi, yi), b.mul(xj, yj));
        }
    return FiniteRing::trusted(n, std::move(add), std::move(mul), pack(a.zero(), b.zero()),
                               pack(a.one(), b.one()), a.commutative() && b.commutative());
}

}  // namespace finscheme

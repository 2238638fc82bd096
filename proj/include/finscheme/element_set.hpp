#pragma once

// Dense bitset over a finite index universe {0..n-1}. Used both for subsets of
// a ring carrier and for sets of points of a finite space.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace finscheme {

using Elem = std::uint32_t;

class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    ElementSet(std::size_t universe, std::initializer_list<Elem> members) : ElementSet(universe) {
        for (Elem e : members) insert(e);
    }

    static ElementSet full(std::size_t universe) {
        ElementSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<Elem>(i));
        return s;
    }

    static ElementSet from_mask(std::size_t universe, std::uint64_t mask) {
        ElementSet s(universe);
        if (!s.words_.empty()) s.words_[0] = mask & s.tail_mask(0);
        return s;
    }

    static ElementSet from_members(std::size_t universe, const std::vector<Elem>& members) {
        ElementSet s(universe);
        for (Elem e : members) s.insert(e);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(Elem e) const {
        return e < universe_ && ((words_[e / 64] >> (e % 64)) & 1U) != 0;
    }
    void insert(Elem e) { words_[e / 64] |= (std::uint64_t{1} << (e % 64)); }
    void erase(Elem e) { words_[e / 64] &= ~(std::uint64_t{1} << (e % 64)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }

    bool is_subset_of(const ElementSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
            if ((words_[i] & ~o) != 0) return false;
        }
        return true;
    }

    ElementSet operator&(const ElementSet& o) const {
        ElementSet r(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] = words_[i] & (i < o.words_.size() ? o.words_[i] : 0);
        return r;
    }
    ElementSet operator|(const ElementSet& o) const {
        ElementSet r(std::max(universe_, o.universe_));
        for (std::size_t i = 0; i < r.words_.size(); ++i) {
            const std::uint64_t a = i < words_.size() ? words_[i] : 0;
            const std::uint64_t b = i < o.words_.size() ? o.words_[i] : 0;
            r.words_[i] = a | b;
        }
        return r;
    }
    // Relative complement this \ o.
    ElementSet operator-(const ElementSet& o) const {
        ElementSet r(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] = words_[i] & ~(i < o.words_.size() ? o.words_[i] : 0);
        return r;
    }
    ElementSet complement() const { return full(universe_) - *this; }

    std::vector<Elem> members() const {
        std::vector<Elem> out;
        out.reserve(count());
        for (std::size_t i = 0; i < universe_; ++i)
            if (contains(static_cast<Elem>(i))) out.push_back(static_cast<Elem>(i));
        return out;
    }

    // Low 64 bits; meaningful as the full bitmask only when universe <= 64.
    std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

    bool operator==(const ElementSet& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }

    // Numeric comparison of the bitmasks (most significant word first).
    std::strong_ordering operator<=>(const ElementSet& o) const {
        const std::size_t n = std::max(words_.size(), o.words_.size());
        for (std::size_t k = n; k-- > 0;) {
            const std::uint64_t a = k < words_.size() ? words_[k] : 0;
            const std::uint64_t b = k < o.words_.size() ? o.words_[k] : 0;
            if (a != b) return a <=> b;
        }
        return universe_ <=> o.universe_;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (Elem e : members()) {
            if (!first) s += ",";
            s += std::to_string(e);
            first = false;
        }
        return s + "}";
    }

private:
    std::uint64_t tail_mask(std::size_t word) const {
        const std::size_t bits = universe_ - word * 64;
        return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

// Opens and similar families are ordered by (cardinality, bitmask).
inline bool size_then_mask_less(const ElementSet& a, const ElementSet& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a < b;
}

}  // namespace finscheme

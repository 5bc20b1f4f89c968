#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ectf {

/**
 * Fixed-universe bitset over vertices [0, n). The workhorse for adjacency
 * rows, vertex sets and all tuple/subset enumeration.
 *
 * Set operations require both operands to share the same universe.
 */
class BitRow {
public:
    BitRow() = default;

    explicit BitRow(int n) : nbits_(checked_size(n)), words_(word_count(n), 0) {}

    static BitRow full(int n) {
        BitRow r(n);
        for (auto& w : r.words_) w = ~0ull;
        r.clear_tail();
        return r;
    }

    static BitRow of(int n, std::initializer_list<int> vs) {
        BitRow r(n);
        for (int v : vs) r.set(v);
        return r;
    }

    static BitRow of(int n, const std::vector<int>& vs) {
        BitRow r(n);
        for (int v : vs) r.set(v);
        return r;
    }

    int universe() const { return nbits_; }

    bool test(int i) const {
        range_check(i);
        return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void set(int i) {
        range_check(i);
        words_[static_cast<size_t>(i) >> 6] |= (1ull << (i & 63));
    }

    void reset(int i) {
        range_check(i);
        words_[static_cast<size_t>(i) >> 6] &= ~(1ull << (i & 63));
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool none() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    bool any() const { return !none(); }

    BitRow& operator&=(const BitRow& o) {
        universe_check(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    BitRow& operator|=(const BitRow& o) {
        universe_check(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    /// Removes every element of `o` (set difference).
    BitRow& subtract(const BitRow& o) {
        universe_check(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    BitRow complement() const {
        BitRow r(*this);
        for (auto& w : r.words_) w = ~w;
        r.clear_tail();
        return r;
    }

    friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
    friend BitRow operator|(BitRow a, const BitRow& b) { return a |= b; }

    bool subset_of(const BitRow& o) const {
        universe_check(o);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const BitRow& o) const {
        universe_check(o);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// First set bit with index >= from, or -1.
    int next(int from) const {
        if (from < 0) from = 0;
        if (from >= nbits_) return -1;
        size_t wi = static_cast<size_t>(from) >> 6;
        uint64_t w = words_[wi] & (~0ull << (from & 63));
        while (true) {
            if (w) return static_cast<int>(wi * 64 + std::countr_zero(w));
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }

    int first() const { return next(0); }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count()));
        for (int v = first(); v >= 0; v = next(v + 1)) out.push_back(v);
        return out;
    }

    bool operator==(const BitRow&) const = default;

    /// Three-way order on the ascending vertex lists: {} < {0,2} < {1}.
    static int lex_compare(const BitRow& a, const BitRow& b) {
        a.universe_check(b);
        int x = a.first(), y = b.first();
        while (x >= 0 && y >= 0) {
            if (x != y) return x < y ? -1 : 1;
            x = a.next(x + 1);
            y = b.next(y + 1);
        }
        if (x == y) return 0;
        return x < 0 ? -1 : 1;
    }

private:
    static int checked_size(int n) {
        if (n < 0) throw std::invalid_argument("BitRow: negative universe");
        return n;
    }

    static size_t word_count(int n) { return (static_cast<size_t>(n) + 63) / 64; }

    void range_check(int i) const {
        if (i < 0 || i >= nbits_)
            throw std::out_of_range("BitRow: index " + std::to_string(i) +
                                    " outside [0, " + std::to_string(nbits_) + ")");
    }

    void universe_check(const BitRow& o) const {
        if (nbits_ != o.nbits_) throw std::invalid_argument("BitRow: universe mismatch");
    }

    void clear_tail() {
        if (nbits_ & 63) words_.back() &= (~0ull >> (64 - (nbits_ & 63)));
    }

    int nbits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace ectf

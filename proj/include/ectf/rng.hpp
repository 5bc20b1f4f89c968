#pragma once

#include <cstdint>
#include <random>

namespace ectf {

/**
 * Seeded random source with portable bounded draws.
 *
 * The engine is std::mt19937_64 (its output sequence is pinned by the
 * standard); bounded integers use rejection sampling because
 * std::uniform_int_distribution is implementation-defined and would break
 * byte-identical output across standard libraries.
 */
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    static constexpr const char* algorithm() { return "mt19937_64+rejection"; }

    uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [0, bound); bound must be positive.
    uint64_t below(uint64_t bound) {
        // reject the tail that would bias the modulus
        const uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
        uint64_t x;
        do {
            x = eng_();
        } while (x > limit);
        return x % bound;
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ectf

#pragma once

// Reproducible randomness.
//
// Every campaign is driven by one 64-bit master seed. Sub-streams are derived
// with SplitMix64: stream(seed, i) seeds a std::mt19937_64 with
// splitmix64(seed ^ splitmix64(i + 1)). Only raw engine output is consumed
// (bounded integers use rejection sampling), so streams are identical across
// standard libraries and platforms.

#include <cstdint>
#include <random>

#include "qghost/field.hpp"

namespace qghost {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent sub-stream number `index` of `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed ^ splitmix64(index + 1));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Uniform element of the field.
    Elem element(const Field& f) { return static_cast<Elem>(engine_() & (f.order() - 1)); }
    Elem nonzero_element(const Field& f) {
        return static_cast<Elem>(1 + below(f.order() - 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qghost

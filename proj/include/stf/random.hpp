#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace stf {

// Seeded generator with its own bounded sampling, so streams are identical
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    // Uniform in [lo, hi], rejection sampling on the raw 64-bit stream.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
        std::uint64_t r;
        do r = next();
        while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }
    // True with probability num/den.
    bool chance(std::int64_t num, std::int64_t den) { return uniform(0, den - 1) < num; }
    // Probability given as a double in [0,1], resolved to one part in 2^32.
    bool chance(double p) { return chance(static_cast<std::int64_t>(p * 4294967296.0), 4294967296LL); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(0, static_cast<std::int64_t>(i) - 1)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace stf

#pragma once

#include <cstdint>
#include <random>

namespace asbec {

// Deterministic draw stream. All stochastic choices in the library go through
// this wrapper instead of <random> distributions, so a (seed, call sequence)
// pair maps to the same values on every platform and compiler.
class RandomStream {
public:
    RandomStream() : engine_(0) {}
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform in [-1, 1].
    double uniform_pm1() { return -1.0 + 2.0 * uniform01(); }

    // Unbiased uniform integer in [0, n). n == 0 or 1 consumes no draw.
    std::size_t index(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % span);
    }

    // Uniform over [0, n) \ {excluded}; consumes the draws of index(n - 1).
    std::size_t index_excluding(std::size_t n, std::size_t excluded) {
        std::size_t r = index(n - 1);
        return r >= excluded ? r + 1 : r;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace asbec

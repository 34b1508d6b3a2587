#pragma once

#include <cstdint>
#include <random>

namespace frosty {

// Seeded generator with portable derived draws. std::uniform_int_distribution
// is implementation-defined, so bounded draws use rejection sampling here.
class Rng {
public:
    explicit Rng(uint64_t seed) : g_(seed) {}

    uint64_t next() { return g_(); }

    // Uniform in [0, n).
    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = g_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [lo, hi].
    int range(int lo, int hi) { return lo + (int)below((uint64_t)(hi - lo + 1)); }

private:
    std::mt19937_64 g_;
};

}  // namespace frosty

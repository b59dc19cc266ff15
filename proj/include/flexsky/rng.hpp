#pragma once

#include <cstdint>
#include <random>

namespace flexsky {

/// mt19937_64 behind fixed, standard-library-independent mappings, so a seed
/// produces the same dataset bytes everywhere. uniform01 takes the top 53
/// bits; the normal approximation sums twelve uniforms (no libm involved).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal(double mean, double sigma) {
        double sum = 0.0;
        for (int i = 0; i < 12; ++i) sum += uniform01();
        return mean + sigma * (sum - 6.0);
    }

    std::uint64_t next() { return engine_(); }

    /// Integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace flexsky

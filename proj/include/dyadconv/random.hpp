#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dyadconv {

/**
 * Portable seeded random source.
 *
 * Bits come from std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniform and normal variates are derived here rather than through
 * <random> distributions (whose algorithms are implementation-defined):
 * uniform() takes the top 53 bits, normal() is the basic Box-Muller transform
 * using one fresh pair of uniforms per call.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

private:
    std::mt19937_64 engine_;
};

/// Derive an independent stream seed from a base seed and a stream index (splitmix64 finalizer).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace dyadconv

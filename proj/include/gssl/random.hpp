#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gssl {

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Seeded generator with platform-independent sampling helpers.
///
/// The standard distributions are implementation-defined, so every draw used
/// by the solvers goes through the helpers below to keep runs bitwise
/// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : engine_(mix_seed(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t index(std::uint64_t n) {
        // Reject the low 2^64 mod n values so the modulus is unbiased.
        const std::uint64_t threshold = (0 - n) % n;
        while (true) {
            const std::uint64_t r = engine_();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Exponential variate with the given rate (mean 1/rate).
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    /// Standard normal via Box-Muller (one value per call, no caching).
    double normal() {
        double u1 = uniform();
        while (u1 == 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gssl

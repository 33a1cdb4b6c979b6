/**
 * Seedable, splittable pseudo-random generator with fixed cross-platform
 * output.
 *
 * The std::<distribution> classes are implementation-defined, so every
 * distribution here is hand-rolled on top of xoshiro256++ (public-domain
 * algorithm by Blackman and Vigna) seeded through splitmix64. Identical
 * (seed, stream) pairs give bit-identical sequences on every platform and
 * standard library, which the reproducibility guarantees of the CLI rely on.
 *
 * Streams: Rng::stream(seed, id) derives statistically independent
 * generators from one master seed. Monte-Carlo batches assign one stream per
 * work item (not per thread), so results do not depend on the thread count.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "cohdet/constants.hpp"
#include "cohdet/errors.hpp"

namespace cohdet {

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the 256-bit state; this is
        // the initialization recommended by the xoshiro authors.
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            word = z ^ (z >> 31);
        }
    }

    // Derives an independent generator for work item `stream_id`. The two
    // inputs are mixed through splitmix64 before seeding so that nearby ids
    // do not produce correlated states.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream_id + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + uniform() * (b - a); }

    // Standard normal via Box-Muller; the second variate of each pair is
    // cached, so consecutive calls consume bits in a fixed pattern.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * pi * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Circularly symmetric complex normal with E|z|^2 = 1.
    std::complex<double> complex_normal() {
        return {normal() * 0.70710678118654752440, normal() * 0.70710678118654752440};
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Exact Bernoulli-sum binomial. Intended for the atom counts in this
    // model (tens to a few thousand trials); O(n) per draw.
    std::uint64_t binomial(std::uint64_t n, double p) {
        if (p <= 0.0) return 0;
        if (p >= 1.0) return n;
        std::uint64_t k = 0;
        for (std::uint64_t i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
        return k;
    }

    // Knuth product-of-uniforms Poisson; callers switch to a Gaussian
    // approximation well before the O(mean) cost matters.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double prod = uniform();
        std::uint64_t k = 0;
        while (prod > limit) {
            prod *= uniform();
            ++k;
        }
        return k;
    }

    // Marsaglia-Tsang squeeze method; shape > 0, unit scale.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
        if (shape < 1.0) {
            // Boost to shape+1 and correct with the standard power trick.
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u > 0.0 ? u : 1e-300, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace cohdet

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace monoclust {

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard; the <random> distributions are not, so every draw the toolkit
// needs is implemented here. A given seed therefore produces the same
// stream on any platform, which the reproducibility contracts rely on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe to pass to log().
    double uniform_pos() { return 1.0 - uniform(); }

    // Uniform integer in [lo, hi], inclusive and unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) {
            throw std::invalid_argument("Rng::uniform_int: empty range");
        }
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) {  // full 64-bit range
            return static_cast<std::int64_t>(engine_());
        }
        const std::uint64_t reject_below = (0 - span) % span;
        std::uint64_t r = engine_();
        while (r < reject_below) {
            r = engine_();
        }
        return lo + static_cast<std::int64_t>(r % span);
    }

    // Standard normal via Box-Muller.
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double exponential() { return -std::log(uniform_pos()); }

    // Gamma(shape, 1) via Marsaglia-Tsang; shape 0 is the point mass at 0.
    double gamma(double shape) {
        if (shape < 0.0) {
            throw std::invalid_argument("Rng::gamma: negative shape");
        }
        if (shape == 0.0) return 0.0;
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = 0.0;
            double v = 0.0;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

    // First k entries of a uniform permutation of {0, ..., n-1}
    // (partial Fisher-Yates), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                        std::size_t k) {
        if (k > n) {
            throw std::invalid_argument(
                "Rng::sample_without_replacement: k > n");
        }
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = static_cast<std::size_t>(
                uniform_int(static_cast<std::int64_t>(i),
                            static_cast<std::int64_t>(n) - 1));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 step; decorrelates sub-streams derived from one base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace monoclust

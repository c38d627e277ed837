#pragma once

// Deterministic split-stream random source.
//
// Every (master_seed, trial_index, label, attempt) tuple owns its own
// statistically independent stream, so a trial draws the same numbers no
// matter which worker thread runs it or in which order. Generators from
// <random> are avoided on purpose: their distributions are
// implementation-defined, which would break bit-stable reruns.

#include <cstdint>
#include <cmath>

#include "bswpt/types.hpp"

namespace bswpt {

// Substream roles within one trial.
enum class StreamLabel : std::uint64_t {
    channel_g = 1,
    channel_f = 2,
    channel_h = 3,
    symbols = 4,
    noise = 5,
    interference = 6,
    chips = 7,
};

// splitmix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro256++ seeded through a splitmix64 chain over the key tuple.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t trial_index, StreamLabel label,
              std::uint64_t attempt = 0) {
        std::uint64_t k = mix64(master_seed);
        k = mix64(k ^ mix64(trial_index));
        k = mix64(k ^ mix64(static_cast<std::uint64_t>(label)));
        k = mix64(k ^ mix64(attempt));
        for (auto& w : state_) {
            k += 0x9e3779b97f4a7c15ULL;
            w = mix64(k);
        }
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

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe under log().
    double next_double_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal, Box-Muller; the paired value is kept for the next call.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double z0, z1;
        gaussian_pair(z0, z1);
        spare_ = z1;
        have_spare_ = true;
        return z0;
    }

    // Circularly symmetric complex gaussian with E|z|^2 = variance.
    cplx next_cgaussian(double variance) {
        double z0, z1;
        gaussian_pair(z0, z1);
        const double s = std::sqrt(variance * 0.5);
        return {s * z0, s * z1};
    }

    // Gamma(shape, scale), Marsaglia-Tsang. Shapes down to 0.5 arise from
    // fading orders; the shape<1 case goes through the boost identity
    // G(a) = G(a+1) * U^(1/a).
    double next_gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = next_double_pos();
            return next_gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = next_gaussian();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = next_double_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    void gaussian_pair(double& z0, double& z1) {
        const double u1 = next_double_pos();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        z0 = r * std::cos(theta);
        z1 = r * std::sin(theta);
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bswpt

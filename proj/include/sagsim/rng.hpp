#pragma once

#include <cstdint>
#include <random>

#include "sagsim/geometry.hpp"

namespace sagsim {

/// Deterministic random stream. One stream per simulation run; all randomness
/// (mobility init, fading, fluctuation) is drawn from it in a fixed order so
/// that identical (config, seed) pairs replay bit-identically. Variate
/// transforms are hand-rolled on top of mt19937_64 because std::distribution
/// implementations differ across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0,1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller. Draws two uniforms per call (no
    /// cached spare, so the stream position is call-count deterministic).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Circularly-symmetric complex Gaussian with unit variance:
    /// re, im ~ N(0, 1/2) independently.
    Vec2 complex_normal_unit() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        double re = normal() * inv_sqrt2;
        double im = normal() * inv_sqrt2;
        return {re, im};
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace sagsim

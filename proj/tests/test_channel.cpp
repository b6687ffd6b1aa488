#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "sagsim/channel.hpp"
#include "sagsim/rng.hpp"

using namespace sagsim;

TEST_CASE("path gain for a UAV directly overhead") {
    // L0 = -30 dB, H = 100 m: h^L = 1e-3 / 1e4 = 1e-7
    NodeGeometry vessel{{500, 500}, 0};
    NodeGeometry uav{{500, 500}, 100};
    CHECK(v2x_path_gain(vessel, uav, 1e-3) == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("zero-distance geometry is rejected") {
    NodeGeometry vessel{{500, 500}, 0};
    NodeGeometry ground{{500, 500}, 0};
    CHECK_THROWS_AS(v2x_path_gain(vessel, ground, 1e-3), std::invalid_argument);
}

TEST_CASE("rician power at o = 0 is the deterministic component") {
    CHECK(rician_power(10.0, {0, 0}) == doctest::Approx(10.0 / 11.0));
    CHECK(rician_power(3.0, {0, 0}) == doctest::Approx(0.75));
}

TEST_CASE("pure line-of-sight limit") {
    // K0 -> infinity: |h^R|^2 -> 1 regardless of the scatter draw
    CHECK(rician_power(1e14, {1.3, -0.7}) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("rician power normalization over many draws") {
    RngStream rng(3);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) acc += rician_power(10.0, rng.complex_normal_unit());
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("link rate at unit SNR argument") {
    // P h / (N0 B) = 1 -> R = B log2(2) = B
    double n0 = 3.981071705534969e-21;
    double b = 1e7;
    double h = n0 * b;   // with P = 1
    CHECK(link_rate_bps(b, 1.0, h, n0) == doctest::Approx(1e7).epsilon(1e-12));
}

TEST_CASE("zero gain or zero bandwidth gives zero rate") {
    CHECK(link_rate_bps(1e7, 1.0, 0.0, 1e-20) == 0.0);
    CHECK(link_rate_bps(0.0, 1.0, 1e-9, 1e-20) == 0.0);
    CHECK_THROWS_AS(link_rate_bps(-1.0, 1.0, 1e-9, 1e-20), std::invalid_argument);
    CHECK_THROWS_AS(link_rate_bps(1e7, -1.0, 1e-9, 1e-20), std::invalid_argument);
}

TEST_CASE("shannon rate against a high-precision evaluation") {
    // B = 20 MHz, P = 1 W, h = 1e-13, N0 = 10^-20.4 W/Hz. Expected value
    // frozen from a 60-digit evaluation of B*log2(1 + P*h/(N0*B)).
    double n0 = std::pow(10.0, -20.4);
    double r = link_rate_bps(2e7, 1.0, 1e-13, n0);
    CHECK(r == doctest::Approx(23474615.083634943).epsilon(1e-12));
    // independent long-double route
    long double snr = 1e-13L / (powl(10.0L, -20.4L) * 2e7L);
    long double rl = 2e7L * logl(1.0L + snr) / logl(2.0L);
    CHECK(r == doctest::Approx(static_cast<double>(rl)).epsilon(1e-12));
}

TEST_CASE("isl delay slot counts") {
    CHECK(isl_delay_slots(0.0, 0.1) == 0);
    CHECK(isl_delay_slots(0.05, 0.1) == 1);
    CHECK(isl_delay_slots(0.2, 0.1) == 2);
    CHECK(isl_delay_slots(0.21, 0.1) == 3);
}

TEST_CASE("rate is monotone in gain and power") {
    double n0 = 3.98e-21;
    double prev = 0.0;
    for (double h = 1e-16; h < 1e-8; h *= 10.0) {
        double r = link_rate_bps(1e7, 1.0, h, n0);
        CHECK(r >= prev);
        prev = r;
    }
    prev = 0.0;
    for (double p = 0.1; p < 100.0; p *= 2.0) {
        double r = link_rate_bps(1e7, p, 1e-12, n0);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("rate is concave and non-decreasing in bandwidth") {
    // second-order finite differences on a grid, fixed P*h
    double n0 = 3.98e-21;
    double h = 1e-12;
    double db = 1e4;
    for (double b = 1e5; b < 1e8; b *= 1.7) {
        double r0 = link_rate_bps(b - db, 1.0, h, n0);
        double r1 = link_rate_bps(b, 1.0, h, n0);
        double r2 = link_rate_bps(b + db, 1.0, h, n0);
        CHECK(r1 >= r0 - 1e-6);              // non-decreasing
        CHECK(r2 - 2.0 * r1 + r0 <= 1e-3);   // concave up to FD noise
    }
}

TEST_CASE("path gain decreases with horizontal distance") {
    NodeGeometry uav{{0, 0}, 100};
    double prev = 1.0;
    for (double d = 10.0; d < 3000.0; d *= 1.5) {
        NodeGeometry vessel{{d, 0}, 0};
        double g = v2x_path_gain(vessel, uav, 1e-3);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("free-space loss model reference points") {
    // 19.9 km at 2 GHz and 784 km at 20 GHz, values frozen from a
    // high-precision evaluation of 20 log10(4 pi d f / c).
    auto u2h = make_free_space_loss(2e9, 0.0);
    CHECK(u2h(19900.0) == doctest::Approx(124.44544466335714).epsilon(1e-12));
    auto h2s = make_free_space_loss(2e10, 0.0);
    CHECK(h2s(784000.0) == doctest::Approx(176.35470438885176).epsilon(1e-12));
    auto with_excess = make_free_space_loss(2e9, 3.5);
    CHECK(with_excess(19900.0) == doctest::Approx(124.44544466335714 + 3.5));
}

TEST_CASE("h2s gain composition") {
    // h = K0 * 10^(-eta/10) * Gh * Gs
    CHECK(h2s_gain(10.0, 30.0, 1000.0, 3162.2776601683795) ==
          doctest::Approx(10.0 * 1e-3 * 1000.0 * 3162.2776601683795));
    CHECK(u2h_gain(316.22776601683796, 1000.0, 120.0) ==
          doctest::Approx(316.22776601683796 * 1000.0 * 1e-12));
}

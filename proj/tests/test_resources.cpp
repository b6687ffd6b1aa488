#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "sagsim/resources.hpp"
#include "sagsim/rng.hpp"

using namespace sagsim;

TEST_CASE("bandwidth split: symmetry and hand ratios") {
    auto equal = allocate_bandwidth({3.0, 3.0}, 20e6);
    CHECK(equal[0] == doctest::Approx(10e6));
    CHECK(equal[1] == doctest::Approx(10e6));

    auto ratio = allocate_bandwidth({1.0, 2.0, 3.0}, 12e6);
    CHECK(ratio[0] == doctest::Approx(2e6));
    CHECK(ratio[1] == doctest::Approx(4e6));
    CHECK(ratio[2] == doctest::Approx(6e6));
}

TEST_CASE("bandwidth split: edge cases") {
    CHECK(allocate_bandwidth({}, 1e7).empty());
    auto fallback = allocate_bandwidth({0.0, 0.0, 0.0}, 9e6);   // deep fade
    for (double b : fallback) CHECK(b == doctest::Approx(3e6));
    CHECK_THROWS_AS(allocate_bandwidth({-1.0}, 1e6), std::invalid_argument);
}

TEST_CASE("bandwidth split satisfies the equal-SNR-argument condition") {
    RngStream rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform(0, 29));
        std::vector<double> ph(n);
        for (auto& w : ph) w = std::exp(rng.uniform(-30.0, -15.0));
        double total = rng.uniform(1e6, 5e7);
        auto plan = allocate_bandwidth(ph, total);

        double sum = 0.0;
        for (double b : plan) sum += b;
        REQUIRE(std::abs(sum - total) <= 1e-9 * total);

        // x_v = P h / (N0 B) must be equal across vessels
        double n0 = 3.98e-21;
        double x0 = ph[0] / (n0 * plan[0]);
        for (int v = 1; v < n; ++v) {
            double xv = ph[v] / (n0 * plan[v]);
            REQUIRE(std::abs(xv - x0) / x0 < 1e-12);
        }
    }
}

TEST_CASE("closed-form bandwidth matches the projected-gradient maximizer") {
    RngStream rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform(0, 29));
        std::vector<double> ph(n), q(n);
        double n0 = 3.981071705534969e-21;
        for (int v = 0; v < n; ++v) {
            ph[v] = std::exp(rng.uniform(-26.0, -20.0));
            q[v] = ph[v] / n0;
        }
        double total = rng.uniform(5e6, 5e7);
        auto closed = allocate_bandwidth(ph, total);
        auto pg = oracles::pg_bandwidth_maximizer(q, total);
        double f_closed = oracles::bandwidth_objective(closed, q);
        double f_pg = oracles::bandwidth_objective(pg, q);
        REQUIRE(f_closed >= f_pg - 1e-6 * std::abs(f_pg));
        REQUIRE(std::abs(f_closed - f_pg) <= 1e-6 * std::abs(f_pg));
    }
}

TEST_CASE("compute allocation: hand-traced capping round") {
    // F = 10, weights (8, 2), caps (3, 20): first shares (8, 2); vessel 0
    // capped at 3; the 7 left all goes to vessel 1.
    auto plan = allocate_compute({8.0, 2.0}, {3.0, 20.0}, 10.0);
    CHECK(plan[0] == doctest::Approx(3.0));
    CHECK(plan[1] == doctest::Approx(7.0));
}

TEST_CASE("compute allocation: saturation and degenerate cases") {
    // total demand below budget: everyone gets the cap
    auto all_capped = allocate_compute({5.0, 1.0}, {2.0, 3.0}, 100.0);
    CHECK(all_capped[0] == 2.0);
    CHECK(all_capped[1] == 3.0);

    auto single = allocate_compute({4.0}, {5.0}, 10.0);
    CHECK(single[0] == 5.0);

    auto nothing = allocate_compute({0.0, 0.0}, {5.0, 5.0}, 10.0);
    CHECK(nothing[0] == 0.0);
    CHECK(nothing[1] == 0.0);

    CHECK_THROWS_AS(allocate_compute({1.0}, {-1.0}, 10.0), std::invalid_argument);
}

TEST_CASE("compute allocation matches the water-filling reference exactly") {
    RngStream rng(107);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng.uniform(0, 12));
        std::vector<double> w(n), caps(n);
        for (int v = 0; v < n; ++v) {
            w[v] = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.1, 50.0);
            caps[v] = rng.uniform(0.0, 30.0);
        }
        double f = rng.uniform(1.0, 200.0);
        auto got = allocate_compute(w, caps, f);
        auto ref = oracles::waterfill_with_caps(w, caps, f);
        for (int v = 0; v < n; ++v) REQUIRE(got[v] == ref[v]);

        // budget identity when every weight is positive
        bool all_positive = true;
        double cap_sum = 0.0, got_sum = 0.0;
        for (int v = 0; v < n; ++v) {
            all_positive = all_positive && w[v] > 0.0;
            cap_sum += caps[v];
            got_sum += got[v];
        }
        REQUIRE(got_sum <= f * (1.0 + 1e-12) + 1e-12);
        if (all_positive)
            REQUIRE(got_sum == doctest::Approx(std::min(f, cap_sum)).epsilon(1e-9));
    }
}

TEST_CASE("rate linearization: lower bound with equality at the expansion point") {
    RngStream rng(109);
    for (int trial = 0; trial < 100; ++trial) {
        Attractor a;
        a.vessel_pos = {0, 0};
        a.bandwidth_hz = rng.uniform(1e5, 2e7);
        a.gamma = std::exp(rng.uniform(2.0, 14.0));
        a.height2 = 1e4;
        double phi_k = rng.uniform(1.0, 4e6);
        double r_k = attractor_rate(a, phi_k);
        double g_k = attractor_rate_gradient(a, phi_k);
        for (int i = 0; i < 100; ++i) {
            double phi = rng.uniform(1.0, 4e6);
            double surrogate = r_k + g_k * (phi - phi_k);
            double truth = attractor_rate(a, phi);
            REQUIRE(surrogate <= truth + 1e-9 * std::abs(truth) + 1e-9);
        }
        CHECK(r_k + g_k * 0.0 == r_k);   // equality at the point
    }
}

TEST_CASE("rate gradient matches central finite differences") {
    RngStream rng(113);
    for (int trial = 0; trial < 200; ++trial) {
        Attractor a;
        a.vessel_pos = {0, 0};
        a.bandwidth_hz = rng.uniform(1e5, 2e7);
        a.gamma = std::exp(rng.uniform(2.0, 14.0));
        a.height2 = 1e4;
        double phi = rng.uniform(1e2, 4e6);
        double h = phi * 1e-5;
        double fd = (attractor_rate(a, phi + h) - attractor_rate(a, phi - h)) / (2.0 * h);
        double an = attractor_rate_gradient(a, phi);
        REQUIRE(std::abs(fd - an) <= 1e-6 * std::abs(an));
    }
}

TEST_CASE("collision linearization lower-bounds the true squared distance") {
    RngStream rng(127);
    for (int trial = 0; trial < 200; ++trial) {
        Vec2 wu{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        Vec2 ww{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        Vec2 psi = wu - ww;   // linearization point difference
        for (int i = 0; i < 50; ++i) {
            Vec2 du{rng.uniform(-20, 20), rng.uniform(-20, 20)};
            Vec2 dw{rng.uniform(-20, 20), rng.uniform(-20, 20)};
            Vec2 delta = (wu + du) - (ww + dw);
            double linearized = psi.norm2() + 2.0 * psi.dot(delta - psi);
            REQUIRE(linearized <= delta.norm2() + 1e-9);
        }
        // equality at the linearization point
        double at_point = psi.norm2() + 2.0 * psi.dot(psi - psi);
        CHECK(at_point == doctest::Approx(psi.norm2()));
    }
}

namespace {

SolverOptions test_opts() {
    SolverOptions opt;
    opt.sca_max_iters = 10;
    opt.sca_tol = 1e-6;
    opt.pg_max_iters = 400;
    opt.pg_tol = 1e-9;
    return opt;
}

}  // namespace

TEST_CASE("single UAV moves directly over its only vessel when unconstrained") {
    TrajectoryProblem prob;
    prob.prev_positions = {{0, 0}};
    prob.max_step_m = 100.0;
    prob.d_safe_m = 0.0;
    prob.attractors = {{{{30, 40}, 1e6, 1e6, 1e4}}};
    auto res = optimize_trajectories(prob, test_opts());
    CHECK(res.positions[0].x == doctest::Approx(30.0).epsilon(1e-3));
    CHECK(res.positions[0].y == doctest::Approx(40.0).epsilon(1e-3));
}

TEST_CASE("speed bound binds: move exactly max_step toward a far vessel") {
    TrajectoryProblem prob;
    prob.prev_positions = {{0, 0}};
    prob.max_step_m = 1.5;
    prob.d_safe_m = 0.0;
    prob.attractors = {{{{300, 400}, 1e6, 1e6, 1e4}}};
    auto res = optimize_trajectories(prob, test_opts());
    // projection onto the ball: 1.5 along the unit direction (0.6, 0.8)
    CHECK(dist(res.positions[0], Vec2{0, 0}) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(res.positions[0].x == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(res.positions[0].y == doctest::Approx(1.2).epsilon(1e-6));
}

TEST_CASE("stationary point: UAV already overhead converges in one iteration") {
    TrajectoryProblem prob;
    prob.prev_positions = {{50, 60}};
    prob.max_step_m = 10.0;
    prob.d_safe_m = 0.0;
    prob.attractors = {{{{50, 60}, 1e6, 1e6, 1e4}}};
    auto res = optimize_trajectories(prob, test_opts());
    CHECK(res.sca_iterations <= 1);
    CHECK(res.positions[0].x == doctest::Approx(50.0));
    CHECK(res.positions[0].y == doctest::Approx(60.0));
}

TEST_CASE("no associated vessels: positions unchanged") {
    TrajectoryProblem prob;
    prob.prev_positions = {{10, 20}, {40, 20}};
    prob.max_step_m = 5.0;
    prob.d_safe_m = 5.0;
    prob.attractors = {{}, {}};
    auto res = optimize_trajectories(prob, test_opts());
    CHECK(res.positions[0].x == 10.0);
    CHECK(res.positions[1].x == 40.0);
    CHECK(res.sca_iterations <= 1);
}

TEST_CASE("two UAVs attracted to one vessel end on the safety boundary") {
    TrajectoryProblem prob;
    prob.prev_positions = {{-8, 0}, {8, 0}};
    prob.max_step_m = 6.0;
    prob.d_safe_m = 5.0;
    Attractor pull{{0, 0}, 1e6, 1e6, 1e4};
    prob.attractors = {{pull}, {pull}};
    auto res = optimize_trajectories(prob, test_opts());
    double d = dist(res.positions[0], res.positions[1]);
    CHECK(d >= 5.0 - 1e-9);
    CHECK(d == doctest::Approx(5.0).epsilon(1e-3));
    // true objective never decreased along the accepted path
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
        CHECK(res.objective_trace[i] >=
              res.objective_trace[i - 1] - 1e-9 * std::abs(res.objective_trace[i - 1]));
}

TEST_CASE("infeasible incumbent separation keeps positions and flags the slot") {
    TrajectoryProblem prob;
    prob.prev_positions = {{0, 0}, {1, 0}};   // closer than d_safe
    prob.max_step_m = 2.0;
    prob.d_safe_m = 5.0;
    Attractor pull{{10, 0}, 1e6, 1e6, 1e4};
    prob.attractors = {{pull}, {pull}};
    auto res = optimize_trajectories(prob, test_opts());
    CHECK(res.infeasible_linearization);
    CHECK(res.positions[0].x == 0.0);
    CHECK(res.positions[1].x == 1.0);
}

TEST_CASE("SCA keeps the true objective non-decreasing on random instances") {
    RngStream rng(131);
    for (int trial = 0; trial < 60; ++trial) {
        int uavs = 1 + static_cast<int>(rng.uniform(0, 3));
        TrajectoryProblem prob;
        prob.max_step_m = rng.uniform(1.0, 20.0);
        prob.d_safe_m = 5.0;
        for (int u = 0; u < uavs; ++u)
            prob.prev_positions.push_back({rng.uniform(0, 500) + 600.0 * u, rng.uniform(0, 500)});
        prob.attractors.resize(uavs);
        for (int u = 0; u < uavs; ++u) {
            int k = static_cast<int>(rng.uniform(0, 4));
            for (int i = 0; i < k; ++i)
                prob.attractors[u].push_back({{rng.uniform(0, 2000), rng.uniform(0, 2000)},
                                              rng.uniform(1e5, 1e7),
                                              std::exp(rng.uniform(4.0, 12.0)),
                                              1e4});
        }
        auto res = optimize_trajectories(prob, test_opts());
        for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
            REQUIRE(res.objective_trace[i] >=
                    res.objective_trace[i - 1] - 1e-9 * std::abs(res.objective_trace[i - 1]));
        // speed bound holds exactly
        for (int u = 0; u < uavs; ++u)
            REQUIRE(dist(res.positions[u], prob.prev_positions[u]) <= prob.max_step_m + 1e-9);
    }
}

TEST_CASE("2-UAV/3-vessel instances come within 2% of a fine grid search") {
    RngStream rng(137);
    for (int trial = 0; trial < 5; ++trial) {
        TrajectoryProblem prob;
        prob.prev_positions = {{rng.uniform(100, 200), rng.uniform(100, 200)},
                               {rng.uniform(260, 360), rng.uniform(100, 200)}};
        prob.max_step_m = 15.0;
        prob.d_safe_m = 5.0;
        prob.attractors.resize(2);
        for (int u = 0; u < 2; ++u)
            for (int i = 0; i < 3; ++i)
                prob.attractors[u].push_back({{rng.uniform(50, 400), rng.uniform(50, 400)},
                                              rng.uniform(5e5, 5e6),
                                              std::exp(rng.uniform(6.0, 12.0)),
                                              1e4});
        auto res = optimize_trajectories(prob, test_opts());
        double grid = oracles::lattice_search_objective(prob, 1.0);
        REQUIRE(res.true_objective >= grid - 0.02 * std::abs(grid));
    }
}

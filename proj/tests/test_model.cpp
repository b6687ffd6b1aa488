#include "doctest.h"

#include "sagsim/model.hpp"
#include "sagsim/rng.hpp"

using namespace sagsim;

TEST_CASE("displacement is the horizontal euclidean norm") {
    NodeGeometry a{{0, 0}, 100}, b{{3, 4}, 100};
    CHECK(displacement_m(b, a) == doctest::Approx(5.0));
    CHECK(displacement_m(a, a) == 0.0);
    // speed-bound boundary case at 15 m/s and a 0.1 s slot
    NodeGeometry c{{1, 1}, 100}, d{{1, 1 + 15.0 * 0.1}, 100};
    CHECK(displacement_m(d, c) == doctest::Approx(1.5));
}

TEST_CASE("vessel moves speed*dt along its heading") {
    Rect area{0, 0, 2000, 2000};
    std::vector<NodeGeometry> pos{{{1000, 1000}, 0}};
    std::vector<VesselMotion> mot{{{1, 0}, 10.0}};
    advance_vessel_positions(pos, mot, area, 0.1);
    CHECK(pos[0].pos.x == doctest::Approx(1001.0));
    CHECK(pos[0].pos.y == doctest::Approx(1000.0));
}

TEST_CASE("zero speed is a fixed point") {
    Rect area{0, 0, 2000, 2000};
    std::vector<NodeGeometry> pos{{{123, 456}, 0}};
    std::vector<VesselMotion> mot{{{0.6, 0.8}, 0.0}};
    advance_vessel_positions(pos, mot, area, 0.1);
    CHECK(pos[0].pos.x == 123.0);
    CHECK(pos[0].pos.y == 456.0);
}

TEST_CASE("heading reflects at the boundary") {
    Rect area{0, 0, 2000, 2000};
    // 0.5 m from the east wall, heading east at 10 m/s for 0.1 s:
    // reaches the wall after 0.5 m and bounces back 0.5 m.
    std::vector<NodeGeometry> pos{{{1999.5, 1000}, 0}};
    std::vector<VesselMotion> mot{{{1, 0}, 10.0}};
    advance_vessel_positions(pos, mot, area, 0.1);
    CHECK(pos[0].pos.x == doctest::Approx(1999.5));
    CHECK(mot[0].heading.x == doctest::Approx(-1.0));
    CHECK(area.contains(pos[0].pos));
}

TEST_CASE("positions stay inside the area over long random walks") {
    Rect area{0, 0, 200, 200};
    RngStream rng(7);
    std::vector<NodeGeometry> pos;
    std::vector<VesselMotion> mot;
    for (int i = 0; i < 20; ++i) {
        pos.push_back({{rng.uniform(0, 200), rng.uniform(0, 200)}, 0});
        double a = rng.uniform(0, 6.2831853);
        mot.push_back({{std::cos(a), std::sin(a)}, rng.uniform(5, 15)});
    }
    for (int slot = 0; slot < 5000; ++slot) {
        advance_vessel_positions(pos, mot, area, 0.1);
        for (const auto& p : pos) {
            REQUIRE(p.pos.x >= 0.0);
            REQUIRE(p.pos.x <= 200.0);
            REQUIRE(p.pos.y >= 0.0);
            REQUIRE(p.pos.y <= 200.0);
        }
    }
}

TEST_CASE("displacement per slot never exceeds speed*dt") {
    Rect area{0, 0, 100, 100};
    RngStream rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<NodeGeometry> pos{{{rng.uniform(0, 100), rng.uniform(0, 100)}, 0}};
        double a = rng.uniform(0, 6.2831853);
        double speed = rng.uniform(0, 20);
        std::vector<VesselMotion> mot{{{std::cos(a), std::sin(a)}, speed}};
        Vec2 before = pos[0].pos;
        advance_vessel_positions(pos, mot, area, 0.1);
        // Reflection can only shorten the net displacement.
        CHECK(dist(before, pos[0].pos) <= speed * 0.1 + 1e-9);
    }
}

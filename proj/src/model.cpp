#include "sagsim/model.hpp"

#include <cassert>
#include <cmath>

namespace sagsim {

double displacement_m(const NodeGeometry& now, const NodeGeometry& prev) {
    return dist(now.pos, prev.pos);
}

namespace {

// Walks 1-D motion of length `travel` starting at x with direction sign(dir),
// bouncing off [lo, hi]. Handles multiple bounces within one slot.
void reflect_axis(double& x, double& dir, double travel, double lo, double hi) {
    if (dir == 0.0 || travel <= 0.0) return;
    double remaining = travel;
    while (remaining > 0.0) {
        double to_wall = dir > 0.0 ? hi - x : x - lo;
        if (to_wall >= remaining) {
            x += (dir > 0.0 ? remaining : -remaining);
            return;
        }
        x = dir > 0.0 ? hi : lo;
        dir = -dir;
        remaining -= to_wall;
    }
}

}  // namespace

void advance_vessel_positions(std::vector<NodeGeometry>& positions,
                              std::vector<VesselMotion>& motions,
                              const Rect& area, double dt) {
    assert(positions.size() == motions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        auto& p = positions[i];
        auto& m = motions[i];
        double step = m.speed_mps * dt;
        if (step == 0.0) continue;
        reflect_axis(p.pos.x, m.heading.x, step * std::abs(m.heading.x), area.x0, area.x1);
        reflect_axis(p.pos.y, m.heading.y, step * std::abs(m.heading.y), area.y0, area.y1);
    }
}

}  // namespace sagsim

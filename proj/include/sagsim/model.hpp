#pragma once

#include <cstdint>
#include <vector>

#include "sagsim/geometry.hpp"
#include "sagsim/rng.hpp"

namespace sagsim {

enum class NodeKind { Vessel, Uav, Bs, Hap, Satellite };

/// Discrete-time clock: slot index n with fixed slot length, time T(n) = n * slot_s.
struct SlotClock {
    std::int64_t slot = 0;
    double slot_s = 0.1;

    double time() const { return static_cast<double>(slot) * slot_s; }
};

/// Horizontal position plus fixed height. Vessels have height 0.
struct NodeGeometry {
    Vec2 pos;
    double height_m = 0.0;
};

struct VesselTask {
    double data_bits = 0.0;        // D_v
    double density_cpb = 1.0;      // C_v, cycles per bit
    std::int64_t arrival_slot = 0;
};

/// Straight-line constant-speed motion with boundary reflection. Speed and
/// heading are sampled once at scenario start.
struct VesselMotion {
    Vec2 heading;      // unit vector
    double speed_mps = 0.0;
};

/// Per-server capacity snapshot for one slot.
struct ServerCapacity {
    double f_nominal = 0.0;    // cycles/slot
    double f_avail = 0.0;      // cycles/slot after fluctuation
    double bw_nominal = 0.0;   // Hz (allocable spectrum, UAV/BS only)
    double bw_avail = 0.0;     // Hz after fluctuation
};

struct SatellitePair {
    double f_current_nominal = 0.0;   // cycles/slot
    double f_incoming_nominal = 0.0;  // cycles/slot
    double handover_time_s = 0.0;     // T_s
    double window_s = 0.0;            // pre-handover window
    double isl_delay_s = 0.0;         // T_p
};

/// Euclidean norm of the horizontal position difference between two slots.
double displacement_m(const NodeGeometry& now, const NodeGeometry& prev);

/// Moves every vessel along its heading for dt seconds, reflecting headings
/// at the area boundary. Positions are guaranteed to stay inside the area.
void advance_vessel_positions(std::vector<NodeGeometry>& positions,
                              std::vector<VesselMotion>& motions,
                              const Rect& area, double dt);

}  // namespace sagsim

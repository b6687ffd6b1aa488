#pragma once

#include <string>
#include <vector>

#include "sagsim/geometry.hpp"
#include "sagsim/queueing.hpp"

namespace sagsim {

/// One slot's decision plus the state needed to audit it. Populated by the
/// engine after the final BCD iterate, before the flows are applied.
struct ConstraintCheckInput {
    int vessels = 0;
    NodeIndex idx;
    const SlotIndicators* ind = nullptr;
    const SlotFlows* flows = nullptr;
    const QueueMatrix* queues = nullptr;    // state at slot start

    std::vector<double> bandwidth_hz;       // per vessel, at its chosen target
    std::vector<double> server_bw_hz;       // U+1 access servers: B_i(n)
    std::vector<double> f_plan_cycles;      // vessels x (U+3) server compute grants
    std::vector<double> f_avail_cycles;     // U+3 servers: F_i(n)
    std::vector<double> density_cpb;        // per vessel

    std::vector<Vec2> uav_pos;
    std::vector<Vec2> uav_pos_prev;
    double max_step_m = 0.0;
    double d_safe_m = 0.0;
};

/// Audits one slot against the offloading/bandwidth/compute/kinematic
/// constraint families. Returns one message per violation; empty means clean.
/// Deliberately independent of the optimizers' own bookkeeping.
std::vector<std::string> check_constraints(const ConstraintCheckInput& in);

}  // namespace sagsim

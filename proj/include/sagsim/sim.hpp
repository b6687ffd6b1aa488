#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sagsim/baselines.hpp"
#include "sagsim/config.hpp"

namespace sagsim {

/// Optional CSV sinks for per-slot diagnostics. Null streams skip the work.
struct TraceSinks {
    std::ostream* queues = nullptr;     // slot,vessel,node,bits
    std::ostream* pressure = nullptr;   // slot,vessel,node,pressure,wmin
    std::ostream* opt = nullptr;        // slot,bcd_iter,objective_bits,access_objective_bits
};

struct Metrics {
    std::vector<double> delay_s;          // per vessel; horizon length when unfinished
    std::vector<bool> finished;
    int unfinished = 0;
    double mean_delay_s = 0.0;
    double total_delay_s = 0.0;

    std::vector<double> slot_backlog_bits;     // total backlog at each slot start
    double handover_backlog_bits = 0.0;        // snapshot at the first handover
    std::vector<double> handover_snapshots;    // every handover
    std::vector<int> bcd_iters;                // per slot (DASH variants)
    long candidate_evaluations = 0;
    std::int64_t slots_run = 0;
    double wall_time_s = 0.0;
};

/// Runs one scenario to completion or horizon. Deterministic given
/// (config, variant): all randomness comes from one seeded stream that is
/// advanced identically for every variant (common random numbers).
/// Throws std::invalid_argument on config errors and SimInvariantError when
/// a runtime invariant breaks.
Metrics run_scenario(const ScenarioConfig& cfg, SchedulerVariant variant,
                     TraceSinks sinks = {});

/// Runs every (variant, seed) pair with common random numbers. `jobs` > 1
/// dispatches runs to a thread pool; results are ordered deterministically
/// regardless of scheduling.
std::vector<ComparisonRow> compare_variants(const ScenarioConfig& cfg,
                                            const std::vector<SchedulerVariant>& variants,
                                            const std::vector<std::uint64_t>& seeds,
                                            int jobs = 1);

}  // namespace sagsim

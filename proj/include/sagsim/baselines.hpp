#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sagsim/queueing.hpp"

namespace sagsim {

/// DASH is the full scheme; DASH_NO_HO disables the anticipatory handover
/// blending; ONE_SHOT_PROXY freezes a per-task plan at the arrival slot and
/// never re-routes. The proxy is a stand-in with the one-shot failure mode,
/// not a reimplementation of any published baseline.
enum class SchedulerVariant { Dash, DashNoHandover, OneShotProxy };

const char* variant_name(SchedulerVariant v);
bool parse_variant(const std::string& name, SchedulerVariant& out);

/// Environment snapshot taken at the freeze slot.
struct OneShotSnapshot {
    int vessels = 0;
    int uavs = 0;
    std::vector<double> access_rate_bits;   // V x (U+1), equal-split bandwidth
    std::vector<double> f_avail;            // U+3 servers
    std::vector<double> bw_avail;           // U+1 access servers
    std::vector<double> density_cpb;        // per vessel
    std::vector<double> data_bits;          // per vessel
};

/// Frozen per-task plan. Sites are indexed [0]=access server, [1]=HAP,
/// [2]=satellite; a BS target puts the whole task at site 0.
struct OneShotPlan {
    std::vector<int> target_node;                        // queue node id per vessel
    std::vector<std::array<double, 3>> quota_bits;       // per vessel per site
    std::vector<double> bw_fraction;                     // frozen share of the target's spectrum
    std::vector<std::array<double, 3>> grant_fraction;   // frozen share of each site's compute
    std::vector<double> f_snapshot;                      // U+3
    std::vector<double> bw_snapshot;                     // U+1
};

/// Builds the frozen plan: greedy target choice on snapshot state, task split
/// across the path's compute sites proportional to their snapshot capacity,
/// equal-split bandwidth and compute shares among the vessels frozen to each
/// server. Deterministic; consumes no randomness. With integer_bits the
/// quotas are floored to whole bits (the last site absorbs the remainder).
OneShotPlan one_shot_schedule(const OneShotSnapshot& snap, const NodeIndex& idx,
                              bool integer_bits = false);

struct ComparisonRow {
    SchedulerVariant variant;
    std::uint64_t seed = 0;
    double mean_delay_s = 0.0;
    double handover_backlog_bits = 0.0;
    int unfinished = 0;
};

}  // namespace sagsim

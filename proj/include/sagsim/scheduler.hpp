#pragma once

#include <vector>

#include "sagsim/queueing.hpp"

namespace sagsim {

/// Blended current/incoming satellite state used inside the pre-handover
/// window. Outside the window `active` is false and the current state is
/// passed through unchanged.
struct JointSatelliteState {
    double f_cycles = 0.0;        // effective compute, cycles/slot
    std::vector<double> q_bits;   // effective per-vessel backlog
    bool active = false;
};

/// Weighted blend with weight (T_s - T(n)) / window on the current satellite,
/// clamped to [0,1]. Continuous across the window entry and equal to the
/// incoming state exactly at the handover instant.
JointSatelliteState joint_satellite_state(double f_current, double f_incoming,
                                          const std::vector<double>& q_current,
                                          const std::vector<double>& q_incoming,
                                          double t_now_s, double handover_time_s,
                                          double window_s);

/// Homogenized link rates (bits/slot) of one vessel's offload graph.
/// Candidate order for access links: UAV 0..U-1, then BS.
struct GraphRates {
    std::vector<double> access_bits;   // U+1 entries
    std::vector<double> u2h_bits;      // U entries
    double h2s_bits = 0.0;
    std::vector<double> compute_bits;  // U+3 entries: UAVs, BS, HAP, SAT (r^c = F_i / C_v)
};

/// Per-vessel graph after homogenization. Node ids: 0 vessel, 1..U UAVs,
/// U+1 BS, U+2 HAP, U+3 satellite, U+4 virtual sink. Zero-rate edges are
/// excluded; unreachable nodes get wmin = +infinity.
struct OffloadGraph {
    int uavs = 0;
    double r_bar = 0.0;
    double r_max = 0.0;
    std::vector<double> wmin;   // per node id, distance to the virtual sink
};

OffloadGraph build_graph(const GraphRates& rates, int uavs);

/// Pressure indices J = Q + wmin for one vessel. j_server is indexed by
/// queue node id minus 1 (UAVs first, then BS, HAP, SAT).
struct PressureState {
    double j_vessel = 0.0;
    std::vector<double> j_server;
};

/// J values from a built graph and the vessel's queue row. The satellite
/// entry uses `sat_backlog_bits` (the joint backlog inside the window).
PressureState pressures(const OffloadGraph& g, const QueueMatrix& queues, int vessel,
                        double sat_backlog_bits);

/// Vessel-side decision: argmax over {UAV 0..U-1, BS} of (J_v0 - J_vi) * r_vi.
/// Unreachable candidates never win; if every candidate is unreachable the
/// vessel falls back to the BS (association is mandatory, flows clamp to 0).
/// Ties break to the lowest candidate index. Returns the candidate index
/// (U means BS).
int vessel_decision(const PressureState& p, const std::vector<double>& access_bits,
                    int uavs);

/// Relay-side decision: argmax over vessels of max(J_from - J_to, 0).
/// Returns -1 when every differential clamps to zero (nothing forwarded).
/// Pairs involving an unreachable node clamp to zero. Ties break to the
/// lowest vessel index. The masked overload restricts the argmax to eligible
/// vessels (those with data buffered at the relay); an ineligible winner
/// would waste the link's single slot.
int relay_decision(const std::vector<double>& j_from, const std::vector<double>& j_to);
int relay_decision(const std::vector<double>& j_from, const std::vector<double>& j_to,
                   const std::vector<char>& eligible);

/// Everything schedule_slot needs for one slot, already reduced to
/// homogenized rates and effective satellite state.
struct ScheduleInputs {
    int uavs = 0;
    int vessels = 0;
    std::vector<double> access_bits;    // vessels x (U+1), bits/slot
    std::vector<double> u2h_bits;       // per UAV
    double h2s_bits = 0.0;
    std::vector<double> f_avail;        // U+3 entries (satellite entry already joint)
    std::vector<double> density_cpb;    // per vessel
    std::vector<double> sat_backlog;    // per vessel (joint inside the window)
};

struct ScheduleResult {
    SlotIndicators indicators;
    long candidate_evaluations = 0;
    std::vector<PressureState> pressure;  // per vessel, for diagnostics
    std::vector<OffloadGraph> graphs;     // per vessel
};

/// Layer-wise decisions for one slot: per-vessel access choice, then one
/// vessel per UAV-to-HAP link and one for the HAP-to-satellite link.
ScheduleResult schedule_slot(const ScheduleInputs& in, const QueueMatrix& queues);

}  // namespace sagsim

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sagsim {

/// Thrown when a queue update breaks an internal invariant (negative backlog,
/// conservation drift). Aborts the run; surfaced as exit code 2 by the CLI.
struct SimInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Node indexing inside a QueueMatrix row:
///   0            vessel itself
///   1 .. U       UAVs
///   U+1          BS
///   U+2          HAP
///   U+3          satellite (current)
struct NodeIndex {
    int uavs = 0;
    int vessel() const { return 0; }
    int uav(int u) const { return 1 + u; }
    int bs() const { return uavs + 1; }
    int hap() const { return uavs + 2; }
    int sat() const { return uavs + 3; }
    int count() const { return uavs + 4; }
    bool is_uav(int node) const { return node >= 1 && node <= uavs; }
};

/// Backlog Q[v][node] in bits for every vessel at the vessel itself and each
/// server, plus the ISL in-flight buffer and the cumulative computed total
/// used by the conservation invariant.
class QueueMatrix {
public:
    struct InFlight {
        double bits = 0.0;
        std::int64_t release_slot = 0;
    };

    QueueMatrix() = default;
    QueueMatrix(int vessels, NodeIndex idx);

    int vessels() const { return vessels_; }
    const NodeIndex& index() const { return idx_; }

    double& at(int v, int node) { return q_[v * idx_.count() + node]; }
    double at(int v, int node) const { return q_[v * idx_.count() + node]; }

    double& computed(int v) { return computed_[v]; }
    double computed(int v) const { return computed_[v]; }

    std::vector<InFlight>& in_flight(int v) { return in_flight_[v]; }
    double in_flight_bits(int v) const;

    /// Everything still owed for vessel v: own queue + server queues + in-flight.
    double vessel_total(int v) const;

    /// Sum over servers only (excludes the vessel's own queue and in-flight).
    double server_total(int v) const;

    /// |own + servers + in-flight + computed - expected| for vessel v.
    double conservation_error(int v, double expected_bits) const;

    /// Moves all satellite backlog into the in-flight buffer with the given
    /// release slot. Returns the total transferred bits (handover snapshot).
    double start_isl_transfer(std::int64_t release_slot);

    /// Releases in-flight entries due at or before `slot` back onto the
    /// (current) satellite queue.
    void release_in_flight(std::int64_t slot);

private:
    int vessels_ = 0;
    NodeIndex idx_;
    std::vector<double> q_;
    std::vector<double> computed_;
    std::vector<std::vector<InFlight>> in_flight_;
};

/// Offloading indicators for one slot (the binary a-variables).
struct SlotIndicators {
    std::vector<int> vessel_target;   // per vessel: node index of chosen UAV or BS
    std::vector<int> uav_relay;       // per UAV: chosen vessel or -1
    int hap_relay = -1;               // chosen vessel or -1
};

/// Per-link capacities for one slot, in bits/slot.
struct SlotRates {
    std::vector<double> access_bits;  // per vessel, for its chosen target
    std::vector<double> u2h_bits;     // per UAV
    double h2s_bits = 0.0;
};

/// Clamped realized flows for one slot.
struct SlotFlows {
    std::vector<double> vessel_tx;    // per vessel, bits moved to its target
    std::vector<double> uav_relay;    // per UAV, bits moved to HAP
    double hap_relay = 0.0;           // bits moved to satellite
    std::vector<double> comp;         // vessels x nodes, bits computed (vessel col unused)

    double total_moved_or_computed(int vessels, int nodes) const;
};

/// Clamps requested flows to link capacity and available backlog. Relays draw
/// only from slot-start backlog (no multi-hop within a slot); computed amounts
/// may additionally consume same-slot arrivals minus same-slot relays.
/// `comp_plan` is the desired computed bits per (vessel, node). When
/// `integer_bits` is set every emitted flow is floored to a whole bit.
SlotFlows clamp_flows(const SlotIndicators& ind, const SlotRates& rates,
                      const QueueMatrix& queues, const std::vector<double>& comp_plan,
                      bool integer_bits);

/// Applies clamped flows to the queue matrix. Throws SimInvariantError if any
/// queue would go negative.
void apply_slot(QueueMatrix& queues, const SlotIndicators& ind, const SlotFlows& flows);

struct CompletionResult {
    bool finished = false;
    double delay_s = 0.0;   // (N_v + 1) * tau when finished, horizon otherwise
};

/// Completion delay from a per-slot history of total backlog (element n =
/// backlog at the start of slot n, in-flight included). The task counts as
/// finished only if a zero total is witnessed after the last positive one.
CompletionResult completion_delay(const std::vector<double>& totals, double tau_s);

}  // namespace sagsim

#include "sagsim/queueing.hpp"

#include <cmath>
#include <string>

namespace sagsim {

QueueMatrix::QueueMatrix(int vessels, NodeIndex idx)
    : vessels_(vessels),
      idx_(idx),
      q_(static_cast<std::size_t>(vessels) * idx.count(), 0.0),
      computed_(vessels, 0.0),
      in_flight_(vessels) {}

double QueueMatrix::in_flight_bits(int v) const {
    double s = 0.0;
    for (const auto& f : in_flight_[v]) s += f.bits;
    return s;
}

double QueueMatrix::vessel_total(int v) const {
    double s = at(v, 0);
    s += server_total(v);
    s += in_flight_bits(v);
    return s;
}

double QueueMatrix::server_total(int v) const {
    double s = 0.0;
    for (int node = 1; node < idx_.count(); ++node) s += at(v, node);
    return s;
}

double QueueMatrix::conservation_error(int v, double expected_bits) const {
    return std::abs(vessel_total(v) + computed_[v] - expected_bits);
}

double QueueMatrix::start_isl_transfer(std::int64_t release_slot) {
    double total = 0.0;
    int sat = idx_.sat();
    for (int v = 0; v < vessels_; ++v) {
        double bits = at(v, sat);
        if (bits > 0.0) {
            in_flight_[v].push_back({bits, release_slot});
            total += bits;
        }
        at(v, sat) = 0.0;
    }
    return total;
}

void QueueMatrix::release_in_flight(std::int64_t slot) {
    int sat = idx_.sat();
    for (int v = 0; v < vessels_; ++v) {
        auto& list = in_flight_[v];
        for (std::size_t i = 0; i < list.size();) {
            if (list[i].release_slot <= slot) {
                at(v, sat) += list[i].bits;
                list[i] = list.back();
                list.pop_back();
            } else {
                ++i;
            }
        }
    }
}

double SlotFlows::total_moved_or_computed(int vessels, int nodes) const {
    double s = 0.0;
    for (double x : vessel_tx) s += x;
    for (double x : uav_relay) s += x;
    s += hap_relay;
    for (int v = 0; v < vessels; ++v)
        for (int node = 0; node < nodes; ++node) s += comp[v * nodes + node];
    return s;
}

namespace {

double maybe_floor(double x, bool integer_bits) {
    return integer_bits ? std::floor(x) : x;
}

// Arrival and relay-out matrices per (vessel, node), assembled in fixed
// (uav index) order so clamp and apply share bit-identical arithmetic.
struct FlowGeometry {
    std::vector<double> arrival;
    std::vector<double> relay_out;
};

FlowGeometry build_geometry(const SlotIndicators& ind, const SlotFlows& flows,
                            const NodeIndex& idx, int vessels) {
    FlowGeometry g;
    g.arrival.assign(static_cast<std::size_t>(vessels) * idx.count(), 0.0);
    g.relay_out.assign(static_cast<std::size_t>(vessels) * idx.count(), 0.0);
    auto A = [&](int v, int node) -> double& { return g.arrival[v * idx.count() + node]; };
    auto R = [&](int v, int node) -> double& { return g.relay_out[v * idx.count() + node]; };

    for (int v = 0; v < vessels; ++v)
        A(v, ind.vessel_target[v]) += flows.vessel_tx[v];
    for (int u = 0; u < idx.uavs; ++u) {
        int v = ind.uav_relay[u];
        if (v >= 0) {
            R(v, idx.uav(u)) += flows.uav_relay[u];
            A(v, idx.hap()) += flows.uav_relay[u];
        }
    }
    if (ind.hap_relay >= 0) {
        R(ind.hap_relay, idx.hap()) += flows.hap_relay;
        A(ind.hap_relay, idx.sat()) += flows.hap_relay;
    }
    return g;
}

}  // namespace

SlotFlows clamp_flows(const SlotIndicators& ind, const SlotRates& rates,
                      const QueueMatrix& queues, const std::vector<double>& comp_plan,
                      bool integer_bits) {
    const NodeIndex& idx = queues.index();
    const int vessels = queues.vessels();
    const int nodes = idx.count();

    for (double r : rates.access_bits)
        if (r < 0.0) throw std::invalid_argument("clamp_flows: negative access rate");
    for (double r : rates.u2h_bits)
        if (r < 0.0) throw std::invalid_argument("clamp_flows: negative relay rate");
    if (rates.h2s_bits < 0.0) throw std::invalid_argument("clamp_flows: negative relay rate");
    for (int v = 0; v < vessels; ++v)
        for (int node = 0; node < nodes; ++node)
            if (queues.at(v, node) < 0.0)
                throw std::invalid_argument("clamp_flows: negative backlog");

    SlotFlows flows;
    flows.vessel_tx.assign(vessels, 0.0);
    flows.uav_relay.assign(idx.uavs, 0.0);
    flows.comp.assign(static_cast<std::size_t>(vessels) * nodes, 0.0);

    for (int v = 0; v < vessels; ++v)
        flows.vessel_tx[v] =
            maybe_floor(std::min(queues.at(v, 0), rates.access_bits[v]), integer_bits);

    for (int u = 0; u < idx.uavs; ++u) {
        int v = ind.uav_relay[u];
        if (v >= 0)
            flows.uav_relay[u] =
                maybe_floor(std::min(queues.at(v, idx.uav(u)), rates.u2h_bits[u]), integer_bits);
    }
    if (ind.hap_relay >= 0)
        flows.hap_relay =
            maybe_floor(std::min(queues.at(ind.hap_relay, idx.hap()), rates.h2s_bits), integer_bits);

    FlowGeometry g = build_geometry(ind, flows, idx, vessels);
    for (int v = 0; v < vessels; ++v) {
        for (int node = 1; node < nodes; ++node) {
            std::size_t k = static_cast<std::size_t>(v) * nodes + node;
            double cap = (queues.at(v, node) + g.arrival[k]) - g.relay_out[k];
            double want = comp_plan[k];
            double granted = std::min(want, cap);
            if (granted < 0.0) granted = 0.0;
            flows.comp[k] = maybe_floor(granted, integer_bits);
        }
    }
    return flows;
}

void apply_slot(QueueMatrix& queues, const SlotIndicators& ind, const SlotFlows& flows) {
    const NodeIndex& idx = queues.index();
    const int vessels = queues.vessels();
    const int nodes = idx.count();

    FlowGeometry g = build_geometry(ind, flows, idx, vessels);
    for (int v = 0; v < vessels; ++v) {
        double q0 = queues.at(v, 0) - flows.vessel_tx[v];
        if (q0 < 0.0)
            throw SimInvariantError("vessel queue went negative (vessel " + std::to_string(v) + ")");
        queues.at(v, 0) = q0;
        for (int node = 1; node < nodes; ++node) {
            std::size_t k = static_cast<std::size_t>(v) * nodes + node;
            // Same association as the clamp-side cap, so comp <= cap implies >= 0.
            double q = ((queues.at(v, node) + g.arrival[k]) - g.relay_out[k]) - flows.comp[k];
            if (q < 0.0)
                throw SimInvariantError("server queue went negative (vessel " +
                                        std::to_string(v) + ", node " + std::to_string(node) + ")");
            queues.at(v, node) = q;
            queues.computed(v) += flows.comp[k];
        }
    }
}

CompletionResult completion_delay(const std::vector<double>& totals, double tau_s) {
    std::ptrdiff_t last_positive = -1;
    for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(totals.size()); ++n)
        if (totals[n] > 0.0) last_positive = n;
    if (last_positive < 0) return {true, 0.0};
    if (last_positive == static_cast<std::ptrdiff_t>(totals.size()) - 1)
        return {false, static_cast<double>(totals.size()) * tau_s};
    return {true, static_cast<double>(last_positive + 1) * tau_s};
}

}  // namespace sagsim

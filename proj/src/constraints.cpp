#include "sagsim/constraints.hpp"

#include <cmath>

namespace sagsim {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-6;

bool leq(double lhs, double rhs) {
    return lhs <= rhs + kRelTol * std::max(std::abs(lhs), std::abs(rhs)) + kAbsTol;
}

}  // namespace

std::vector<std::string> check_constraints(const ConstraintCheckInput& in) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& msg) { bad.push_back(msg); };
    const NodeIndex& idx = in.idx;
    const int V = in.vessels;
    const int U = idx.uavs;
    const int nodes = idx.count();

    // Offloading indicators: one UAV-or-BS target per vessel, at most one
    // vessel per relay link.
    for (int v = 0; v < V; ++v) {
        int t = in.ind->vessel_target[v];
        if (!(idx.is_uav(t) || t == idx.bs()))
            fail("vessel " + std::to_string(v) + " target is not a UAV or the BS");
    }
    for (int u = 0; u < U; ++u) {
        int r = in.ind->uav_relay[u];
        if (r < -1 || r >= V) fail("uav " + std::to_string(u) + " relay vessel out of range");
    }
    if (in.ind->hap_relay < -1 || in.ind->hap_relay >= V) fail("hap relay vessel out of range");

    // Bandwidth: non-negative, per-server totals within budget.
    std::vector<double> bw_used(U + 1, 0.0);
    for (int v = 0; v < V; ++v) {
        double b = in.bandwidth_hz[v];
        if (b < 0.0) fail("negative bandwidth for vessel " + std::to_string(v));
        int t = in.ind->vessel_target[v];
        int s = idx.is_uav(t) ? t - 1 : U;
        bw_used[s] += b;
    }
    for (int s = 0; s <= U; ++s)
        if (!leq(bw_used[s], in.server_bw_hz[s]))
            fail("bandwidth over budget at access server " + std::to_string(s));

    // Arrivals and relay-out per (vessel, node), assembled from the flows.
    std::vector<double> arrival(static_cast<std::size_t>(V) * nodes, 0.0);
    std::vector<double> relay_out(static_cast<std::size_t>(V) * nodes, 0.0);
    for (int v = 0; v < V; ++v)
        arrival[v * nodes + in.ind->vessel_target[v]] += in.flows->vessel_tx[v];
    for (int u = 0; u < U; ++u) {
        int v = in.ind->uav_relay[u];
        if (v >= 0) {
            relay_out[v * nodes + idx.uav(u)] += in.flows->uav_relay[u];
            arrival[v * nodes + idx.hap()] += in.flows->uav_relay[u];
        }
    }
    if (in.ind->hap_relay >= 0) {
        relay_out[in.ind->hap_relay * nodes + idx.hap()] += in.flows->hap_relay;
        arrival[in.ind->hap_relay * nodes + idx.sat()] += in.flows->hap_relay;
    }

    // Computed data: non-negative, within backlog caps, within server capacity,
    // and within the per-vessel compute grants.
    std::vector<double> comp_cycles_used(U + 3, 0.0);
    std::vector<double> grant_cycles_used(U + 3, 0.0);
    for (int v = 0; v < V; ++v) {
        for (int node = 1; node < nodes; ++node) {
            std::size_t k = static_cast<std::size_t>(v) * nodes + node;
            double comp = in.flows->comp[k];
            if (comp < 0.0) {
                fail("negative computed amount");
                continue;
            }
            double cap = in.queues->at(v, node) + arrival[k] - relay_out[k];
            if (!leq(comp, cap))
                fail("computed amount exceeds available backlog at node " + std::to_string(node));
            int s = node - 1;
            comp_cycles_used[s] += comp * in.density_cpb[v];
            double grant = in.f_plan_cycles[static_cast<std::size_t>(v) * (U + 3) + s];
            if (grant < 0.0) fail("negative compute grant");
            double fmax = in.density_cpb[v] * cap;
            if (!leq(grant, fmax))
                fail("compute grant exceeds the per-vessel maximum at node " + std::to_string(node));
            grant_cycles_used[s] += grant;
        }
    }
    for (int s = 0; s < U + 3; ++s) {
        if (!leq(comp_cycles_used[s], in.f_avail_cycles[s]))
            fail("computed cycles exceed capacity at server " + std::to_string(s));
        if (!leq(grant_cycles_used[s], in.f_avail_cycles[s]))
            fail("granted cycles exceed capacity at server " + std::to_string(s));
    }

    // Kinematics: speed bound and pairwise separation.
    for (int u = 0; u < U; ++u) {
        double step = dist(in.uav_pos[u], in.uav_pos_prev[u]);
        if (!leq(step, in.max_step_m))
            fail("uav " + std::to_string(u) + " exceeds the speed bound");
        for (int w = u + 1; w < U; ++w)
            if (!leq(in.d_safe_m, dist(in.uav_pos[u], in.uav_pos[w])))
                fail("uav pair (" + std::to_string(u) + "," + std::to_string(w) +
                     ") violates the safety distance");
    }
    return bad;
}

}  // namespace sagsim

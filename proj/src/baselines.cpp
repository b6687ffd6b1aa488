#include "sagsim/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace sagsim {

const char* variant_name(SchedulerVariant v) {
    switch (v) {
        case SchedulerVariant::Dash: return "DASH";
        case SchedulerVariant::DashNoHandover: return "DASH_NO_HO";
        case SchedulerVariant::OneShotProxy: return "ONE_SHOT_PROXY";
    }
    return "?";
}

bool parse_variant(const std::string& name, SchedulerVariant& out) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "DASH") out = SchedulerVariant::Dash;
    else if (up == "DASH_NO_HO") out = SchedulerVariant::DashNoHandover;
    else if (up == "ONE_SHOT_PROXY") out = SchedulerVariant::OneShotProxy;
    else return false;
    return true;
}

OneShotPlan one_shot_schedule(const OneShotSnapshot& snap, const NodeIndex& idx,
                              bool integer_bits) {
    const int V = snap.vessels;
    const int U = snap.uavs;

    OneShotPlan plan;
    plan.target_node.assign(V, idx.bs());
    plan.quota_bits.assign(V, {0.0, 0.0, 0.0});
    plan.bw_fraction.assign(V, 0.0);
    plan.grant_fraction.assign(V, {0.0, 0.0, 0.0});
    plan.f_snapshot = snap.f_avail;
    plan.bw_snapshot = snap.bw_avail;

    // Greedy target choice in vessel order: estimated service is the
    // bottleneck of the access pipe and the per-path compute share, both at
    // snapshot values. Counts track the contention created so far.
    std::vector<int> k(U + 1, 0);        // vessels per access server
    int m_hap = 0, m_sat = 0;            // vessels splitting onto HAP / satellite
    for (int v = 0; v < V; ++v) {
        int best = U;
        double best_score = -1.0;
        for (int s = 0; s <= U; ++s) {
            double access = snap.access_rate_bits[v * (U + 1) + s] *
                            static_cast<double>(V) / static_cast<double>(k[s] + 1);
            double compute;
            if (s < U)
                compute = (snap.f_avail[s] / (k[s] + 1) + snap.f_avail[U + 1] / (m_hap + 1) +
                           snap.f_avail[U + 2] / (m_sat + 1)) /
                          snap.density_cpb[v];
            else
                compute = snap.f_avail[U] / (k[s] + 1) / snap.density_cpb[v];
            double score = std::min(access, compute);
            if (score > best_score) {
                best_score = score;
                best = s;
            }
        }
        plan.target_node[v] = (best < U) ? idx.uav(best) : idx.bs();
        ++k[best];
        if (best < U) {
            ++m_hap;
            ++m_sat;
        }
    }

    // Task split across the path's compute sites, proportional to snapshot
    // capacity. The satellite share absorbs the rounding residue.
    for (int v = 0; v < V; ++v) {
        int t = plan.target_node[v];
        double d = snap.data_bits[v];
        if (t == idx.bs()) {
            plan.quota_bits[v] = {d, 0.0, 0.0};
            continue;
        }
        int s = t - 1;
        double f0 = snap.f_avail[s], f1 = snap.f_avail[U + 1], f2 = snap.f_avail[U + 2];
        double total = f0 + f1 + f2;
        if (total <= 0.0) {
            plan.quota_bits[v] = {d, 0.0, 0.0};
            continue;
        }
        double q0 = f0 / total * d;
        double q1 = f1 / total * d;
        if (integer_bits) {
            q0 = std::floor(q0);
            q1 = std::floor(q1);
        }
        plan.quota_bits[v] = {q0, q1, d - q0 - q1};
    }

    // Frozen equal-split shares of spectrum and compute.
    int m_hap_used = 0, m_sat_used = 0;
    for (int v = 0; v < V; ++v) {
        if (plan.quota_bits[v][1] > 0.0) ++m_hap_used;
        if (plan.quota_bits[v][2] > 0.0) ++m_sat_used;
    }
    for (int v = 0; v < V; ++v) {
        int t = plan.target_node[v];
        int s = idx.is_uav(t) ? t - 1 : U;
        plan.bw_fraction[v] = 1.0 / static_cast<double>(k[s]);
        plan.grant_fraction[v][0] = 1.0 / static_cast<double>(k[s]);
        plan.grant_fraction[v][1] =
            (plan.quota_bits[v][1] > 0.0) ? 1.0 / static_cast<double>(m_hap_used) : 0.0;
        plan.grant_fraction[v][2] =
            (plan.quota_bits[v][2] > 0.0) ? 1.0 / static_cast<double>(m_sat_used) : 0.0;
    }
    return plan;
}

}  // namespace sagsim

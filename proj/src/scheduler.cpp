#include "sagsim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sagsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

JointSatelliteState joint_satellite_state(double f_current, double f_incoming,
                                          const std::vector<double>& q_current,
                                          const std::vector<double>& q_incoming,
                                          double t_now_s, double handover_time_s,
                                          double window_s) {
    if (window_s <= 0.0) throw std::invalid_argument("pre-handover window must be positive");
    JointSatelliteState js;
    double remaining = handover_time_s - t_now_s;
    if (remaining > window_s || remaining < 0.0) {
        js.f_cycles = f_current;
        js.q_bits = q_current;
        js.active = false;
        return js;
    }
    double w = remaining / window_s;   // weight on the current satellite
    if (w > 1.0) w = 1.0;
    if (w < 0.0) w = 0.0;
    js.f_cycles = w * f_current + (1.0 - w) * f_incoming;
    js.q_bits.resize(q_current.size());
    for (std::size_t v = 0; v < q_current.size(); ++v)
        js.q_bits[v] = w * q_current[v] + (1.0 - w) * q_incoming[v];
    js.active = true;
    return js;
}

OffloadGraph build_graph(const GraphRates& rates, int uavs) {
    OffloadGraph g;
    g.uavs = uavs;
    const int n_nodes = uavs + 5;
    const int vsn = uavs + 4;

    struct Edge {
        int from, to;
        double rate;
    };
    std::vector<Edge> edges;
    auto add = [&](int from, int to, double rate) {
        if (rate > 0.0) edges.push_back({from, to, rate});
    };
    for (int u = 0; u < uavs; ++u) add(0, 1 + u, rates.access_bits[u]);
    add(0, uavs + 1, rates.access_bits[uavs]);
    for (int u = 0; u < uavs; ++u) add(1 + u, uavs + 2, rates.u2h_bits[u]);
    add(uavs + 2, uavs + 3, rates.h2s_bits);
    for (int u = 0; u < uavs; ++u) add(1 + u, vsn, rates.compute_bits[u]);
    add(uavs + 1, vsn, rates.compute_bits[uavs]);
    add(uavs + 2, vsn, rates.compute_bits[uavs + 1]);
    add(uavs + 3, vsn, rates.compute_bits[uavs + 2]);

    if (edges.empty()) {
        g.wmin.assign(n_nodes, kInf);
        g.wmin[vsn] = 0.0;
        return g;
    }

    double sum = 0.0, rmax = 0.0;
    for (const auto& e : edges) {
        sum += e.rate;
        rmax = std::max(rmax, e.rate);
    }
    g.r_bar = sum / static_cast<double>(edges.size());
    g.r_max = rmax;

    // Dijkstra on reversed edges from the virtual sink; the graph is tiny so
    // the quadratic scan is fine.
    g.wmin.assign(n_nodes, kInf);
    g.wmin[vsn] = 0.0;
    std::vector<bool> done(n_nodes, false);
    for (int iter = 0; iter < n_nodes; ++iter) {
        int best = -1;
        double best_d = kInf;
        for (int i = 0; i < n_nodes; ++i)
            if (!done[i] && g.wmin[i] < best_d) {
                best = i;
                best_d = g.wmin[i];
            }
        if (best < 0) break;
        done[best] = true;
        for (const auto& e : edges) {
            if (e.to != best) continue;
            double w = g.r_bar * g.r_max / e.rate;
            if (g.wmin[best] + w < g.wmin[e.from]) g.wmin[e.from] = g.wmin[best] + w;
        }
    }
    return g;
}

PressureState pressures(const OffloadGraph& g, const QueueMatrix& queues, int vessel,
                        double sat_backlog_bits) {
    const NodeIndex& idx = queues.index();
    PressureState p;
    p.j_vessel = queues.at(vessel, 0) + g.wmin[0];
    p.j_server.resize(idx.count() - 1);
    for (int node = 1; node < idx.count(); ++node) {
        double q = (node == idx.sat()) ? sat_backlog_bits : queues.at(vessel, node);
        p.j_server[node - 1] = q + g.wmin[node];
    }
    return p;
}

int vessel_decision(const PressureState& p, const std::vector<double>& access_bits,
                    int uavs) {
    int best = -1;
    double best_score = -kInf;
    for (int c = 0; c <= uavs; ++c) {
        double j_i = p.j_server[c];        // candidates are nodes 1..U+1
        if (std::isinf(j_i) || std::isinf(p.j_vessel)) continue;
        double score = (p.j_vessel - j_i) * access_bits[c];
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best < 0 ? uavs : best;   // BS fallback when nothing is reachable
}

int relay_decision(const std::vector<double>& j_from, const std::vector<double>& j_to) {
    std::vector<char> all(j_from.size(), 1);
    return relay_decision(j_from, j_to, all);
}

int relay_decision(const std::vector<double>& j_from, const std::vector<double>& j_to,
                   const std::vector<char>& eligible) {
    int best = -1;
    double best_pd = 0.0;
    for (std::size_t v = 0; v < j_from.size(); ++v) {
        if (!eligible[v]) continue;
        if (std::isinf(j_from[v]) || std::isinf(j_to[v])) continue;
        double pd = std::max(j_from[v] - j_to[v], 0.0);
        if (pd > best_pd) {
            best_pd = pd;
            best = static_cast<int>(v);
        }
    }
    return best;
}

ScheduleResult schedule_slot(const ScheduleInputs& in, const QueueMatrix& queues) {
    const NodeIndex& idx = queues.index();
    const int U = in.uavs;
    const int V = in.vessels;

    ScheduleResult out;
    out.indicators.vessel_target.assign(V, idx.bs());
    out.indicators.uav_relay.assign(U, -1);
    out.indicators.hap_relay = -1;
    out.pressure.reserve(V);
    out.graphs.reserve(V);

    for (int v = 0; v < V; ++v) {
        GraphRates r;
        r.access_bits.assign(in.access_bits.begin() + v * (U + 1),
                             in.access_bits.begin() + (v + 1) * (U + 1));
        r.u2h_bits = in.u2h_bits;
        r.h2s_bits = in.h2s_bits;
        r.compute_bits.resize(U + 3);
        for (int s = 0; s < U + 3; ++s)
            r.compute_bits[s] = in.f_avail[s] / in.density_cpb[v];
        out.graphs.push_back(build_graph(r, U));
        out.pressure.push_back(pressures(out.graphs.back(), queues, v, in.sat_backlog[v]));
    }

    for (int v = 0; v < V; ++v) {
        const auto* row = &in.access_bits[v * (U + 1)];
        std::vector<double> access(row, row + U + 1);
        int c = vessel_decision(out.pressure[v], access, U);
        out.indicators.vessel_target[v] = (c < U) ? idx.uav(c) : idx.bs();
        out.candidate_evaluations += U + 1;
    }

    // One vessel per relay link: UAV u -> HAP, then HAP -> satellite. Only
    // vessels with data buffered at the relay compete for its slot.
    std::vector<double> j_from(V), j_to(V);
    std::vector<char> eligible(V);
    for (int u = 0; u < U; ++u) {
        for (int v = 0; v < V; ++v) {
            j_from[v] = out.pressure[v].j_server[idx.uav(u) - 1];
            j_to[v] = out.pressure[v].j_server[idx.hap() - 1];
            eligible[v] = queues.at(v, idx.uav(u)) > 0.0;
        }
        out.indicators.uav_relay[u] = relay_decision(j_from, j_to, eligible);
        out.candidate_evaluations += V;
    }
    for (int v = 0; v < V; ++v) {
        j_from[v] = out.pressure[v].j_server[idx.hap() - 1];
        j_to[v] = out.pressure[v].j_server[idx.sat() - 1];
        eligible[v] = queues.at(v, idx.hap()) > 0.0;
    }
    out.indicators.hap_relay = relay_decision(j_from, j_to, eligible);
    out.candidate_evaluations += V;

    return out;
}

}  // namespace sagsim

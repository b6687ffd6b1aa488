#include "sagsim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sagsim/channel.hpp"
#include "sagsim/constraints.hpp"
#include "sagsim/model.hpp"
#include "sagsim/resources.hpp"
#include "sagsim/scheduler.hpp"

namespace sagsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Evenly spaced UAV deployment on a grid over the area.
std::vector<Vec2> uniform_uav_deployment(int uavs, const Rect& area) {
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(uavs))));
    int rows = (uavs + cols - 1) / cols;
    std::vector<Vec2> pos;
    pos.reserve(uavs);
    double dx = (area.x1 - area.x0) / cols;
    double dy = (area.y1 - area.y0) / rows;
    for (int u = 0; u < uavs; ++u) {
        int r = u / cols, c = u % cols;
        pos.push_back({area.x0 + (c + 0.5) * dx, area.y0 + (r + 0.5) * dy});
    }
    return pos;
}

/// All mutable world state for one run.
struct World {
    const ScenarioConfig* cfg = nullptr;
    NodeIndex idx;
    int V = 0, U = 0;

    // linear-unit constants
    double l0 = 0.0, n0 = 0.0;
    double g_uav = 0.0, g_hap = 0.0, g_sat = 0.0;
    LossModel u2h_loss, h2s_loss;

    Rect area;
    NodeGeometry bs_geom, hap_geom;
    std::vector<NodeGeometry> vessel_geom;
    std::vector<VesselMotion> vessel_motion;
    std::vector<Vec2> uav_pos, uav_pos_prev;

    std::vector<double> task_bits, density;

    // per-slot realizations
    std::vector<double> f_avail;    // U+3 servers: UAVs..., BS, HAP, SAT(current)
    double f_incoming = 0.0;
    std::vector<double> bw_avail;   // U+1 access servers
    std::vector<double> rician;     // V x (U+1), |h^R|^2 draws

    double f_sat_cur_nom = 0.0, f_sat_inc_nom = 0.0;
    double next_handover_s = kInf;

    double access_gain(int v, int s) const {
        NodeGeometry tgt = (s < U) ? NodeGeometry{uav_pos[s], cfg->uav_height_m} : bs_geom;
        return v2x_path_gain(vessel_geom[v], tgt, l0) * rician[v * (U + 1) + s];
    }

    double u2h_rate_bits(int u) const {
        double dz = cfg->hap_height_m - cfg->uav_height_m;
        double d = std::sqrt(dz * dz + dist2(uav_pos[u], hap_geom.pos));
        double g = u2h_gain(g_uav, g_hap, u2h_loss(d));
        return link_rate_bps(cfg->bw_hap_hz, cfg->p_uav_w, g, n0) * cfg->slot_s;
    }

    double h2s_rate_bits() const {
        double g = h2s_gain(cfg->k0, h2s_loss(cfg->h2s_distance_m), g_hap, g_sat);
        return link_rate_bps(cfg->bw_sat_hz, cfg->p_hap_w, g, n0) * cfg->slot_s;
    }
};

World make_world(const ScenarioConfig& cfg, RngStream& rng) {
    World w;
    w.cfg = &cfg;
    w.V = cfg.vessels;
    w.U = cfg.uavs;
    w.idx.uavs = cfg.uavs;
    w.l0 = db_to_linear(cfg.l0_db);
    w.n0 = dbm_to_watt(cfg.n0_dbm_hz);
    w.g_uav = db_to_linear(cfg.g_uav_dbi);
    w.g_hap = db_to_linear(cfg.g_hap_dbi);
    w.g_sat = db_to_linear(cfg.g_sat_dbi);
    w.u2h_loss = make_free_space_loss(cfg.carrier_u2h_hz, cfg.excess_u2h_db);
    w.h2s_loss = make_free_space_loss(cfg.carrier_h2s_hz, cfg.excess_h2s_db);
    w.area = {0.0, 0.0, cfg.area_m, cfg.area_m};
    w.bs_geom = {{cfg.bs_x_m, cfg.bs_y_m}, cfg.bs_height_m};
    w.hap_geom = {w.area.center(), cfg.hap_height_m};
    w.uav_pos = uniform_uav_deployment(cfg.uavs, w.area);
    w.uav_pos_prev = w.uav_pos;

    w.vessel_geom.resize(w.V);
    w.vessel_motion.resize(w.V);
    w.task_bits.resize(w.V);
    w.density.resize(w.V);
    for (int v = 0; v < w.V; ++v) {
        w.vessel_geom[v].pos = {rng.uniform(w.area.x0, w.area.x1),
                                rng.uniform(w.area.y0, w.area.y1)};
        w.vessel_geom[v].height_m = 0.0;
        double angle = rng.uniform(0.0, 6.283185307179586);
        w.vessel_motion[v].heading = {std::cos(angle), std::sin(angle)};
        w.vessel_motion[v].speed_mps = rng.uniform(cfg.vessel_speed_min, cfg.vessel_speed_max);
        w.task_bits[v] = rng.uniform(cfg.data_bits_min, cfg.data_bits_max);
        if (cfg.integer_bits) w.task_bits[v] = std::floor(w.task_bits[v]);
        w.density[v] = rng.uniform(cfg.density_min_cpb, cfg.density_max_cpb);
    }

    w.f_avail.assign(w.U + 3, 0.0);
    w.bw_avail.assign(w.U + 1, 0.0);
    w.rician.assign(static_cast<std::size_t>(w.V) * (w.U + 1), 1.0);
    w.f_sat_cur_nom = cfg.f_sat;
    w.f_sat_inc_nom = (1.0 - cfg.incoming_deficit) * cfg.f_sat;
    w.next_handover_s = cfg.handover_time_s;
    return w;
}

double fluctuate(double nominal, double range, RngStream& rng) {
    if (range <= 0.0) return nominal;
    double x = nominal * (1.0 + rng.uniform(-range, range));
    return x < 0.0 ? 0.0 : x;
}

/// Fixed draw order every slot so all variants consume the identical stream.
void advance_environment(World& w, RngStream& rng, std::int64_t slot) {
    const ScenarioConfig& cfg = *w.cfg;
    if (slot > 0)
        advance_vessel_positions(w.vessel_geom, w.vessel_motion, w.area, cfg.slot_s);

    for (int u = 0; u < w.U; ++u)
        w.f_avail[u] = fluctuate(cfg.f_uav, cfg.fluct_compute, rng);
    w.f_avail[w.U] = fluctuate(cfg.f_bs, cfg.fluct_compute, rng);
    w.f_avail[w.U + 1] = fluctuate(cfg.f_hap, cfg.fluct_compute, rng);
    w.f_avail[w.U + 2] = fluctuate(w.f_sat_cur_nom, cfg.fluct_compute, rng);
    w.f_incoming = fluctuate(w.f_sat_inc_nom, cfg.fluct_compute, rng);

    for (int u = 0; u < w.U; ++u)
        w.bw_avail[u] = fluctuate(cfg.bw_uav_hz, cfg.fluct_bandwidth, rng);
    w.bw_avail[w.U] = fluctuate(cfg.bw_bs_hz, cfg.fluct_bandwidth, rng);

    for (int v = 0; v < w.V; ++v)
        for (int s = 0; s <= w.U; ++s)
            w.rician[v * (w.U + 1) + s] = rician_power(cfg.k0, rng.complex_normal_unit());
}

struct SlotOutcome {
    SlotIndicators ind;
    SlotFlows flows;
    std::vector<double> bandwidth_hz;     // per vessel at its target
    std::vector<double> f_plan_cycles;    // V x (U+3)
    int bcd_iters = 0;
    long candidate_evals = 0;
    ScheduleResult schedule;              // pressures for the trace sink
};

/// One DASH slot: layer-wise scheduling, then the bandwidth / trajectory /
/// compute loop until the per-slot throughput proxy converges.
SlotOutcome dash_slot(World& w, const QueueMatrix& queues, std::int64_t slot,
                      bool anticipatory, std::ostream* opt_sink) {
    const ScenarioConfig& cfg = *w.cfg;
    const NodeIndex& idx = w.idx;
    const int V = w.V, U = w.U;
    const double tau = cfg.slot_s;
    const double t_now = static_cast<double>(slot) * tau;

    // The incoming satellite inherits the current backlog over the ISL, so
    // the anticipated backlog is the current one (plus any configured extra).
    std::vector<double> q_sat_cur(V), q_sat_inc(V);
    for (int v = 0; v < V; ++v) {
        q_sat_cur[v] = queues.at(v, idx.sat());
        q_sat_inc[v] = q_sat_cur[v] + cfg.incoming_backlog_bits;
    }
    JointSatelliteState joint =
        joint_satellite_state(w.f_avail[U + 2], w.f_incoming, q_sat_cur, q_sat_inc,
                              t_now, w.next_handover_s, cfg.window_s);
    if (!anticipatory) {
        joint.f_cycles = w.f_avail[U + 2];
        joint.q_bits = q_sat_cur;
        joint.active = false;
    }

    // Scheduling sees candidate access rates at an equal bandwidth split and
    // the joint satellite state inside the pre-handover window.
    ScheduleInputs sin;
    sin.uavs = U;
    sin.vessels = V;
    sin.access_bits.resize(static_cast<std::size_t>(V) * (U + 1));
    for (int v = 0; v < V; ++v)
        for (int s = 0; s <= U; ++s)
            sin.access_bits[v * (U + 1) + s] =
                link_rate_bps(w.bw_avail[s] / V, cfg.p_vessel_w, w.access_gain(v, s), w.n0) * tau;
    sin.u2h_bits.resize(U);
    for (int u = 0; u < U; ++u) sin.u2h_bits[u] = w.u2h_rate_bits(u);
    sin.h2s_bits = w.h2s_rate_bits();
    sin.f_avail = w.f_avail;
    sin.f_avail[U + 2] = joint.f_cycles;
    sin.density_cpb = w.density;
    sin.sat_backlog = joint.q_bits;

    SlotOutcome out;
    out.schedule = schedule_slot(sin, queues);
    out.ind = out.schedule.indicators;
    out.candidate_evals = out.schedule.candidate_evaluations;

    // Served sets: associated vessels that still hold data to send.
    std::vector<std::vector<int>> served(U + 1);
    for (int v = 0; v < V; ++v) {
        int t = out.ind.vessel_target[v];
        int s = idx.is_uav(t) ? t - 1 : U;
        if (queues.at(v, 0) > 0.0) served[s].push_back(v);
    }

    out.bandwidth_hz.assign(V, 0.0);
    out.f_plan_cycles.assign(static_cast<std::size_t>(V) * (U + 3), 0.0);

    SlotRates rates;
    rates.access_bits.assign(V, 0.0);
    rates.u2h_bits = sin.u2h_bits;
    rates.h2s_bits = sin.h2s_bits;

    std::vector<double> comp_plan(static_cast<std::size_t>(V) * idx.count(), 0.0);
    const std::vector<double> huge_plan(static_cast<std::size_t>(V) * idx.count(), 1e300);

    double prev_obj = -kInf;
    for (int j = 0; j < cfg.bcd_max_iters; ++j) {
        // P1: closed-form split proportional to P*h over each served set.
        for (int s = 0; s <= U; ++s) {
            if (served[s].empty()) continue;
            std::vector<double> weight(served[s].size());
            for (std::size_t i = 0; i < served[s].size(); ++i)
                weight[i] = cfg.p_vessel_w * w.access_gain(served[s][i], s);
            std::vector<double> share = allocate_bandwidth(weight, w.bw_avail[s]);
            for (std::size_t i = 0; i < served[s].size(); ++i)
                out.bandwidth_hz[served[s][i]] = share[i];
        }

        // P2: reposition UAVs toward the vessels they serve.
        TrajectoryProblem prob;
        prob.prev_positions = w.uav_pos_prev;
        prob.max_step_m = cfg.uav_max_speed * tau;
        prob.d_safe_m = cfg.d_safe_m;
        prob.attractors.resize(U);
        double h2 = cfg.uav_height_m * cfg.uav_height_m;
        for (int u = 0; u < U; ++u) {
            prob.attractors[u].clear();
            for (int v : served[u]) {
                double bw = out.bandwidth_hz[v];
                if (bw <= 0.0) continue;
                double gamma = cfg.p_vessel_w * w.l0 * w.rician[v * (U + 1) + u] / (w.n0 * bw);
                prob.attractors[u].push_back({w.vessel_geom[v].pos, bw, gamma, h2});
            }
        }
        SolverOptions sopt{cfg.sca_max_iters, cfg.sca_tol, cfg.pg_max_iters, cfg.pg_tol};
        TrajectoryResult traj = optimize_trajectories(prob, sopt, w.uav_pos);
        w.uav_pos = traj.positions;

        // Rates under the new geometry and allocation.
        for (int v = 0; v < V; ++v) {
            int t = out.ind.vessel_target[v];
            int s = idx.is_uav(t) ? t - 1 : U;
            rates.access_bits[v] =
                link_rate_bps(out.bandwidth_hz[v], cfg.p_vessel_w, w.access_gain(v, s), w.n0) * tau;
        }
        for (int u = 0; u < U; ++u) rates.u2h_bits[u] = w.u2h_rate_bits(u);
        rates.h2s_bits = w.h2s_rate_bits();

        // Algorithm 1 per server; caps come from the backlog available this
        // slot (queue + same-slot arrivals - same-slot relays).
        SlotFlows cap_probe = clamp_flows(out.ind, rates, queues, huge_plan, cfg.integer_bits);
        for (int s = 0; s < U + 3; ++s) {
            int node = s + 1;
            double f_total = w.f_avail[s];
            if (f_total <= 0.0) {
                for (int v = 0; v < V; ++v)
                    out.f_plan_cycles[v * (U + 3) + s] = 0.0;
                continue;
            }
            std::vector<double> weight(V), caps(V);
            double weight_sum = 0.0, cap_sum = 0.0;
            for (int v = 0; v < V; ++v) {
                double rc = f_total / w.density[v];
                weight[v] = queues.at(v, node) / rc;
                caps[v] = w.density[v] * cap_probe.comp[v * idx.count() + node];
                weight_sum += weight[v];
                cap_sum += caps[v];
            }
            // Degenerate slot: no carried backlog anywhere but same-slot
            // arrivals exist. Waiting a slot wastes the server; split by the
            // arrival-driven caps instead.
            if (weight_sum == 0.0 && cap_sum > 0.0) weight = caps;
            std::vector<double> grant = allocate_compute(weight, caps, f_total);
            for (int v = 0; v < V; ++v)
                out.f_plan_cycles[v * (U + 3) + s] = grant[v];
        }
        for (int v = 0; v < V; ++v)
            for (int s = 0; s < U + 3; ++s)
                comp_plan[v * idx.count() + s + 1] =
                    out.f_plan_cycles[v * (U + 3) + s] / w.density[v];

        out.flows = clamp_flows(out.ind, rates, queues, comp_plan, cfg.integer_bits);
        out.bcd_iters = j + 1;

        // Convergence uses the realized offload+compute bits; the access-rate
        // objective (the P1/P2 value, monotone across iterations) is traced
        // alongside it.
        double obj = out.flows.total_moved_or_computed(V, idx.count());
        if (opt_sink) {
            double access_obj = 0.0;
            for (int v = 0; v < V; ++v) access_obj += rates.access_bits[v];
            *opt_sink << slot << ',' << j << ',' << obj << ',' << access_obj << '\n';
        }
        if (std::abs(obj - prev_obj) <= cfg.bcd_tol * std::max(1.0, std::abs(obj))) break;
        prev_obj = obj;
    }
    return out;
}

/// One frozen-plan slot. All flow clamping is delegated to clamp_flows by
/// encoding the plan's remaining quotas as rate/plan limits.
SlotOutcome proxy_slot(World& w, const QueueMatrix& queues, const OneShotPlan& plan,
                       std::vector<std::array<double, 3>>& computed_site) {
    const ScenarioConfig& cfg = *w.cfg;
    const NodeIndex& idx = w.idx;
    const int V = w.V, U = w.U;
    const double tau = cfg.slot_s;

    SlotOutcome out;
    out.ind.vessel_target = plan.target_node;
    out.ind.uav_relay.assign(U, -1);
    out.ind.hap_relay = -1;
    out.bandwidth_hz.assign(V, 0.0);
    out.f_plan_cycles.assign(static_cast<std::size_t>(V) * (U + 3), 0.0);

    SlotRates rates;
    rates.access_bits.assign(V, 0.0);
    rates.u2h_bits.assign(U, 0.0);
    rates.h2s_bits = 0.0;

    for (int v = 0; v < V; ++v) {
        int t = plan.target_node[v];
        int s = idx.is_uav(t) ? t - 1 : U;
        double bw = plan.bw_fraction[v] * std::min(plan.bw_snapshot[s], w.bw_avail[s]);
        out.bandwidth_hz[v] = bw;
        rates.access_bits[v] =
            link_rate_bps(bw, cfg.p_vessel_w, w.access_gain(v, s), w.n0) * tau;
    }

    // Upward relays: per link, the vessel with the most bits that are beyond
    // the local compute quota. The remaining-forward cap is encoded into the
    // link rate so clamp_flows enforces it.
    auto forwardable_at = [&](int v, int node, int site) {
        double rem_local = plan.quota_bits[v][site] - computed_site[v][site];
        double fw = queues.at(v, node) - std::max(rem_local, 0.0);
        return fw > 0.0 ? fw : 0.0;
    };
    for (int u = 0; u < U; ++u) {
        int node = idx.uav(u);
        int best = -1;
        double best_fw = 0.0;
        for (int v = 0; v < V; ++v) {
            if (plan.target_node[v] != node) continue;
            double fw = forwardable_at(v, node, 0);
            if (fw > best_fw) {
                best_fw = fw;
                best = v;
            }
        }
        if (best >= 0) {
            out.ind.uav_relay[u] = best;
            rates.u2h_bits[u] = std::min(w.u2h_rate_bits(u), best_fw);
        }
    }
    {
        int best = -1;
        double best_fw = 0.0;
        for (int v = 0; v < V; ++v) {
            double fw = forwardable_at(v, idx.hap(), 1);
            if (fw > best_fw) {
                best_fw = fw;
                best = v;
            }
        }
        if (best >= 0) {
            out.ind.hap_relay = best;
            rates.h2s_bits = std::min(w.h2s_rate_bits(), best_fw);
        }
    }

    // Frozen compute grants, clipped by what the site actually has this slot
    // and by the remaining quota. Rounding can leave a few ulps of data at a
    // site whose quota is formally exhausted; sweep such dust so the run
    // terminates (integer mode is exact and needs no sweep).
    std::vector<double> comp_plan(static_cast<std::size_t>(V) * idx.count(), 0.0);
    for (int v = 0; v < V; ++v) {
        int t = plan.target_node[v];
        int ts = idx.is_uav(t) ? t - 1 : U;
        const int site_server[3] = {ts, U + 1, U + 2};
        const int site_node[3] = {t, idx.hap(), idx.sat()};
        for (int k = 0; k < 3; ++k) {
            int s = site_server[k];
            double grant = plan.grant_fraction[v][k] * std::min(plan.f_snapshot[s], w.f_avail[s]);
            double want = grant / w.density[v];
            double rem = std::max(plan.quota_bits[v][k] - computed_site[v][k], 0.0);
            double buf = queues.at(v, site_node[k]);
            double sweep = (!cfg.integer_bits && buf < 1e-3) ? buf : 0.0;
            want = std::min(want, rem + sweep);
            comp_plan[v * idx.count() + site_node[k]] = want;
        }
    }

    out.flows = clamp_flows(out.ind, rates, queues, comp_plan, cfg.integer_bits);

    for (int v = 0; v < V; ++v) {
        int t = plan.target_node[v];
        const int site_node[3] = {t, idx.hap(), idx.sat()};
        for (int k = 0; k < 3; ++k) {
            double done = out.flows.comp[v * idx.count() + site_node[k]];
            computed_site[v][k] += done;
            int s = (k == 0) ? (idx.is_uav(t) ? t - 1 : U) : (k == 1 ? U + 1 : U + 2);
            out.f_plan_cycles[v * (U + 3) + s] = done * w.density[v];
        }
    }
    return out;
}

OneShotSnapshot snapshot_world(const World& w) {
    OneShotSnapshot snap;
    snap.vessels = w.V;
    snap.uavs = w.U;
    snap.f_avail = w.f_avail;
    snap.bw_avail = w.bw_avail;
    snap.density_cpb = w.density;
    snap.data_bits = w.task_bits;
    snap.access_rate_bits.resize(static_cast<std::size_t>(w.V) * (w.U + 1));
    for (int v = 0; v < w.V; ++v)
        for (int s = 0; s <= w.U; ++s)
            snap.access_rate_bits[v * (w.U + 1) + s] =
                link_rate_bps(w.bw_avail[s] / w.V, w.cfg->p_vessel_w, w.access_gain(v, s), w.n0) *
                w.cfg->slot_s;
    return snap;
}

const char* node_label(const NodeIndex& idx, int node, std::string& buf) {
    if (node == 0) return "self";
    if (idx.is_uav(node)) {
        buf = "uav" + std::to_string(node - 1);
        return buf.c_str();
    }
    if (node == idx.bs()) return "bs";
    if (node == idx.hap()) return "hap";
    return "sat";
}

}  // namespace

Metrics run_scenario(const ScenarioConfig& cfg, SchedulerVariant variant, TraceSinks sinks) {
    auto t_start = std::chrono::steady_clock::now();
    {
        std::string msg;
        for (const auto& d : validate_config(cfg))
            if (d.error) msg += d.key + ": " + d.message + "; ";
        if (!msg.empty()) throw std::invalid_argument("invalid config: " + msg);
    }
    if (variant == SchedulerVariant::OneShotProxy && cfg.arrival_mode != "all_at_zero")
        throw std::invalid_argument("the one-shot proxy supports only all_at_zero arrivals");

    RngStream rng(cfg.seed);
    World w = make_world(cfg, rng);
    const NodeIndex idx = w.idx;
    const int V = w.V;
    const double tau = cfg.slot_s;

    QueueMatrix queues(V, idx);
    std::vector<double> expected_bits(V, 0.0);
    std::vector<std::int64_t> last_positive(V, -1);

    OneShotPlan plan;
    bool plan_frozen = false;
    std::vector<std::array<double, 3>> computed_site(V, {0.0, 0.0, 0.0});

    Metrics m;
    m.delay_s.assign(V, 0.0);
    m.finished.assign(V, false);

    std::int64_t recorded_slots = 0;
    for (std::int64_t n = 0; n < cfg.horizon_slots; ++n) {
        double t_now = static_cast<double>(n) * tau;

        // Task arrivals.
        if (cfg.arrival_mode == "all_at_zero") {
            if (n == 0)
                for (int v = 0; v < V; ++v) {
                    queues.at(v, 0) += w.task_bits[v];
                    expected_bits[v] += w.task_bits[v];
                }
        } else {
            if (n % cfg.arrival_period_slots == 0) {
                double bits = cfg.integer_bits ? std::floor(cfg.arrival_bits) : cfg.arrival_bits;
                for (int v = 0; v < V; ++v) {
                    queues.at(v, 0) += bits;
                    expected_bits[v] += bits;
                }
            }
        }

        // Handover: snapshot, ship satellite backlog over the ISL, swap.
        if (t_now >= w.next_handover_s - 1e-9) {
            double snap = queues.start_isl_transfer(n + isl_delay_slots(cfg.isl_delay_s, tau));
            if (m.handover_snapshots.empty()) m.handover_backlog_bits = snap;
            m.handover_snapshots.push_back(snap);
            w.f_sat_cur_nom = w.f_sat_inc_nom;
            if (cfg.handover_schedule == "periodic") {
                w.f_sat_inc_nom = (1.0 - cfg.incoming_deficit) * cfg.f_sat;
                w.next_handover_s += cfg.handover_period_s;
            } else {
                w.next_handover_s = kInf;
            }
        }
        queues.release_in_flight(n);

        advance_environment(w, rng, n);

        // State at the start of slot n.
        bool all_clear = true;
        double slot_total = 0.0;
        for (int v = 0; v < V; ++v) {
            double tot = queues.vessel_total(v);
            slot_total += tot;
            if (tot > 0.0) {
                last_positive[v] = n;
                all_clear = false;
            }
        }
        m.slot_backlog_bits.push_back(slot_total);
        recorded_slots = n + 1;
        if (sinks.queues) {
            std::string buf;
            for (int v = 0; v < V; ++v) {
                for (int node = 0; node < idx.count(); ++node)
                    *sinks.queues << n << ',' << v << ',' << node_label(idx, node, buf) << ','
                                  << queues.at(v, node) << '\n';
                *sinks.queues << n << ',' << v << ",inflight," << queues.in_flight_bits(v) << '\n';
            }
        }

        bool more_arrivals = cfg.arrival_mode == "staggered";
        if (all_clear && !more_arrivals) break;

        SlotOutcome outcome;
        if (variant == SchedulerVariant::OneShotProxy) {
            if (!plan_frozen) {
                plan = one_shot_schedule(snapshot_world(w), idx, cfg.integer_bits);
                plan_frozen = true;
            }
            outcome = proxy_slot(w, queues, plan, computed_site);
        } else {
            outcome = dash_slot(w, queues, n,
                                variant == SchedulerVariant::Dash, sinks.opt);
            m.bcd_iters.push_back(outcome.bcd_iters);
            if (sinks.pressure) {
                std::string buf;
                for (int v = 0; v < V; ++v) {
                    const auto& p = outcome.schedule.pressure[v];
                    const auto& g = outcome.schedule.graphs[v];
                    *sinks.pressure << n << ',' << v << ",self," << p.j_vessel << ','
                                    << g.wmin[0] << '\n';
                    for (int node = 1; node < idx.count(); ++node)
                        *sinks.pressure << n << ',' << v << ','
                                        << node_label(idx, node, buf) << ','
                                        << p.j_server[node - 1] << ',' << g.wmin[node] << '\n';
                }
            }
        }
        m.candidate_evaluations += outcome.candidate_evals;

        if (cfg.check_constraints) {
            ConstraintCheckInput ci;
            ci.vessels = V;
            ci.idx = idx;
            ci.ind = &outcome.ind;
            ci.flows = &outcome.flows;
            ci.queues = &queues;
            ci.bandwidth_hz = outcome.bandwidth_hz;
            ci.server_bw_hz = w.bw_avail;
            ci.f_plan_cycles = outcome.f_plan_cycles;
            ci.f_avail_cycles = w.f_avail;
            ci.density_cpb = w.density;
            ci.uav_pos = w.uav_pos;
            ci.uav_pos_prev = w.uav_pos_prev;
            ci.max_step_m = cfg.uav_max_speed * tau;
            ci.d_safe_m = cfg.d_safe_m;
            auto bad = check_constraints(ci);
            if (!bad.empty())
                throw SimInvariantError("slot " + std::to_string(n) +
                                        " constraint violation: " + bad.front());
        }

        apply_slot(queues, outcome.ind, outcome.flows);

        if (cfg.check_conservation) {
            for (int v = 0; v < V; ++v) {
                double err = queues.conservation_error(v, expected_bits[v]);
                double tol = cfg.integer_bits ? 1e-9 : 1e-6 * std::max(expected_bits[v], 1.0);
                if (err > tol)
                    throw SimInvariantError("slot " + std::to_string(n) + " vessel " +
                                            std::to_string(v) + " conservation error " +
                                            std::to_string(err));
            }
        }

        w.uav_pos_prev = w.uav_pos;
    }

    m.slots_run = recorded_slots;
    double horizon_s = static_cast<double>(cfg.horizon_slots) * tau;
    for (int v = 0; v < V; ++v) {
        // Work that never arrived because the horizon cut it off still counts
        // as unfinished; only a genuinely empty task completes at time 0.
        double due_bits = cfg.arrival_mode == "all_at_zero" ? w.task_bits[v] : cfg.arrival_bits;
        if (recorded_slots == 0 && due_bits > 0.0) {
            m.finished[v] = false;
            m.delay_s[v] = horizon_s;
            ++m.unfinished;
            m.total_delay_s += m.delay_s[v];
            continue;
        }
        if (expected_bits[v] == 0.0 || last_positive[v] < 0) {
            m.finished[v] = true;
            m.delay_s[v] = 0.0;
        } else if (last_positive[v] < recorded_slots - 1) {
            m.finished[v] = true;
            m.delay_s[v] = static_cast<double>(last_positive[v] + 1) * tau;
        } else {
            m.finished[v] = false;
            m.delay_s[v] = horizon_s;
            ++m.unfinished;
        }
        m.total_delay_s += m.delay_s[v];
    }
    m.mean_delay_s = V > 0 ? m.total_delay_s / V : 0.0;
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return m;
}

std::vector<ComparisonRow> compare_variants(const ScenarioConfig& cfg,
                                            const std::vector<SchedulerVariant>& variants,
                                            const std::vector<std::uint64_t>& seeds,
                                            int jobs) {
    struct Job {
        SchedulerVariant variant;
        std::uint64_t seed;
    };
    std::vector<Job> plan;
    for (auto v : variants)
        for (auto s : seeds) plan.push_back({v, s});

    std::vector<ComparisonRow> rows(plan.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= plan.size()) return;
            ScenarioConfig c = cfg;
            c.seed = plan[i].seed;
            Metrics m = run_scenario(c, plan[i].variant);
            rows[i] = {plan[i].variant, plan[i].seed, m.mean_delay_s,
                       m.handover_backlog_bits, m.unfinished};
        }
    };
    int n_workers = std::max(1, jobs);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

}  // namespace sagsim

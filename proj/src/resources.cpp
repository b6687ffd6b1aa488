#include "sagsim/resources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sagsim {

std::vector<double> allocate_bandwidth(const std::vector<double>& power_gain,
                                       double total_bandwidth_hz) {
    if (total_bandwidth_hz < 0.0)
        throw std::invalid_argument("allocate_bandwidth: negative budget");
    std::vector<double> plan(power_gain.size(), 0.0);
    if (power_gain.empty()) return plan;
    double sum = 0.0;
    for (double w : power_gain) {
        if (w < 0.0) throw std::invalid_argument("allocate_bandwidth: negative weight");
        sum += w;
    }
    if (sum == 0.0) {
        double share = total_bandwidth_hz / static_cast<double>(power_gain.size());
        std::fill(plan.begin(), plan.end(), share);
        return plan;
    }
    for (std::size_t v = 0; v < power_gain.size(); ++v)
        plan[v] = power_gain[v] / sum * total_bandwidth_hz;
    return plan;
}

std::vector<double> allocate_compute(const std::vector<double>& weights,
                                     const std::vector<double>& caps,
                                     double f_total_cycles) {
    const std::size_t n = weights.size();
    if (caps.size() != n) throw std::invalid_argument("allocate_compute: size mismatch");
    if (f_total_cycles < 0.0) throw std::invalid_argument("allocate_compute: negative budget");
    for (std::size_t v = 0; v < n; ++v) {
        if (weights[v] < 0.0 || caps[v] < 0.0)
            throw std::invalid_argument("allocate_compute: negative input");
    }

    std::vector<double> plan(n, 0.0);
    std::vector<bool> pending(n, true);
    double f_re = f_total_cycles;

    for (std::size_t round = 0; round < n + 1; ++round) {
        double weight_sum = 0.0;
        bool any_pending = false;
        for (std::size_t v = 0; v < n; ++v)
            if (pending[v]) {
                weight_sum += weights[v];
                any_pending = true;
            }
        if (!any_pending) break;
        if (weight_sum == 0.0) {
            for (std::size_t v = 0; v < n; ++v)
                if (pending[v]) plan[v] = 0.0;
            break;
        }

        bool capped_any = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (!pending[v]) continue;
            double share = weights[v] / weight_sum * f_re;
            if (share > caps[v]) {
                plan[v] = caps[v];
                pending[v] = false;
                capped_any = true;
            } else {
                plan[v] = share;
            }
        }
        if (!capped_any) break;

        // Remaining budget recomputed from scratch, in vessel index order.
        double assigned = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (!pending[v]) assigned += plan[v];
        f_re = f_total_cycles - assigned;
        if (f_re < 0.0) f_re = 0.0;
    }
    return plan;
}

double attractor_rate(const Attractor& a, double phi) {
    return a.bandwidth_hz * std::log1p(a.gamma / (a.height2 + phi)) / M_LN2;
}

double attractor_rate_gradient(const Attractor& a, double phi) {
    double x = a.height2 + phi;
    return -a.bandwidth_hz * a.gamma / (M_LN2 * x * (x + a.gamma));
}

double trajectory_true_objective(const TrajectoryProblem& prob,
                                 const std::vector<Vec2>& positions) {
    double total = 0.0;
    for (std::size_t u = 0; u < prob.attractors.size(); ++u)
        for (const auto& a : prob.attractors[u])
            total += attractor_rate(a, dist2(positions[u], a.vessel_pos));
    return total;
}

namespace {

// Linearized collision constraint between a UAV pair: a_u.(W_u) + a_w.(W_w) >= b
// with a_u = 2 psi, a_w = -2 psi, psi taken at the linearization point.
struct Halfspace {
    int u = 0, w = 0;
    Vec2 dir;       // psi
    double rhs = 0.0;
};

double halfspace_value(const Halfspace& h, const std::vector<Vec2>& x) {
    return 2.0 * h.dir.dot(x[h.u] - x[h.w]);
}

bool feasible_halfspaces(const std::vector<Halfspace>& hs, const std::vector<Vec2>& x,
                         double tol) {
    for (const auto& h : hs)
        if (halfspace_value(h, x) < h.rhs - tol) return false;
    return true;
}

void project_balls(std::vector<Vec2>& x, const std::vector<Vec2>& centers, double radius) {
    for (std::size_t u = 0; u < x.size(); ++u) {
        Vec2 d = x[u] - centers[u];
        double n = d.norm();
        if (n > radius) x[u] = centers[u] + d * (radius / n);
    }
}

void project_halfspace(std::vector<Vec2>& x, const Halfspace& h) {
    double val = halfspace_value(h, x);
    if (val >= h.rhs) return;
    // gradient of the constraint in the stacked space: (+2psi, -2psi)
    double norm2 = 8.0 * h.dir.norm2();
    if (norm2 <= 0.0) return;
    double step = (h.rhs - val) / norm2;
    x[h.u] += h.dir * (2.0 * step);
    x[h.w] -= h.dir * (2.0 * step);
}

// Exact projection when the ball-projected point already satisfies every
// halfspace; Dykstra's alternating scheme otherwise.
std::vector<Vec2> project_feasible(std::vector<Vec2> z, const std::vector<Vec2>& centers,
                                   double radius, const std::vector<Halfspace>& hs) {
    std::vector<Vec2> y = z;
    project_balls(y, centers, radius);
    if (feasible_halfspaces(hs, y, 0.0)) return y;

    const std::size_t n_sets = 1 + hs.size();
    std::vector<std::vector<Vec2>> corr(n_sets, std::vector<Vec2>(z.size(), Vec2{}));
    std::vector<Vec2> x = z;
    for (int cycle = 0; cycle < 200; ++cycle) {
        double moved = 0.0;
        for (std::size_t s = 0; s < n_sets; ++s) {
            std::vector<Vec2> w(x.size());
            for (std::size_t u = 0; u < x.size(); ++u) w[u] = x[u] + corr[s][u];
            std::vector<Vec2> px = w;
            if (s == 0)
                project_balls(px, centers, radius);
            else
                project_halfspace(px, hs[s - 1]);
            for (std::size_t u = 0; u < x.size(); ++u) {
                corr[s][u] = w[u] - px[u];
                moved += (px[u] - x[u]).norm2();
                x[u] = px[u];
            }
        }
        if (moved < 1e-20) break;
    }
    // Snap once more so the speed bound holds exactly.
    project_balls(x, centers, radius);
    return x;
}

}  // namespace

ScaStepResult sca_step(const TrajectoryProblem& prob, const std::vector<Vec2>& incumbent,
                       const SolverOptions& opt) {
    const std::size_t U = incumbent.size();
    ScaStepResult out;
    out.positions = incumbent;

    std::vector<Halfspace> hs;
    double safe2 = prob.d_safe_m * prob.d_safe_m;
    for (std::size_t u = 0; u + 1 < U; ++u) {
        for (std::size_t w = u + 1; w < U; ++w) {
            Vec2 psi = incumbent[u] - incumbent[w];
            double n2 = psi.norm2();
            if (n2 < safe2 * (1.0 - 1e-12) || n2 == 0.0) {
                out.infeasible = true;   // incumbent violates the linearized set
                return out;
            }
            hs.push_back({static_cast<int>(u), static_cast<int>(w), psi, safe2 + n2});
        }
    }

    // Quadratic weights |dR/dphi| at the linearization point.
    std::vector<std::vector<double>> coef(U);
    double lipschitz = 0.0;
    for (std::size_t u = 0; u < U; ++u) {
        coef[u].resize(prob.attractors[u].size());
        double block = 0.0;
        for (std::size_t a = 0; a < prob.attractors[u].size(); ++a) {
            double phi = dist2(incumbent[u], prob.attractors[u][a].vessel_pos);
            coef[u][a] = -attractor_rate_gradient(prob.attractors[u][a], phi);
            block += coef[u][a];
        }
        lipschitz = std::max(lipschitz, 2.0 * block);
    }
    if (lipschitz <= 0.0) return out;   // constant surrogate, keep incumbent

    auto surrogate = [&](const std::vector<Vec2>& x) {
        double f = 0.0;
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t a = 0; a < coef[u].size(); ++a)
                f += coef[u][a] * dist2(x[u], prob.attractors[u][a].vessel_pos);
        return f;
    };

    double step = 1.0 / lipschitz;
    std::vector<Vec2> x = incumbent;
    double scale = std::max(prob.max_step_m, 1.0);
    for (int it = 0; it < opt.pg_max_iters; ++it) {
        std::vector<Vec2> g(U, Vec2{});
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t a = 0; a < coef[u].size(); ++a)
                g[u] += (x[u] - prob.attractors[u][a].vessel_pos) * (2.0 * coef[u][a]);
        std::vector<Vec2> z(U);
        for (std::size_t u = 0; u < U; ++u) z[u] = x[u] - g[u] * step;
        std::vector<Vec2> nx = project_feasible(std::move(z), prob.prev_positions,
                                                prob.max_step_m, hs);
        double moved = 0.0;
        for (std::size_t u = 0; u < U; ++u) moved = std::max(moved, (nx[u] - x[u]).norm());
        x = std::move(nx);
        if (moved <= opt.pg_tol * scale) break;
    }

    // The projected-gradient path is monotone for step <= 1/L; guard against
    // projection tolerance anyway.
    if (surrogate(x) <= surrogate(incumbent)) out.positions = std::move(x);
    return out;
}

TrajectoryResult optimize_trajectories(const TrajectoryProblem& prob,
                                       const SolverOptions& opt) {
    return optimize_trajectories(prob, opt, prob.prev_positions);
}

TrajectoryResult optimize_trajectories(const TrajectoryProblem& prob,
                                       const SolverOptions& opt,
                                       const std::vector<Vec2>& start) {
    const std::size_t U = prob.prev_positions.size();
    TrajectoryResult res;
    res.positions = start;
    res.true_objective = trajectory_true_objective(prob, res.positions);
    res.objective_trace.push_back(res.true_objective);

    double safe2 = prob.d_safe_m * prob.d_safe_m;
    for (int k = 0; k < opt.sca_max_iters; ++k) {
        ScaStepResult step = sca_step(prob, res.positions, opt);
        if (step.infeasible) {
            res.infeasible_linearization = true;
            break;
        }

        bool ok = true;
        for (std::size_t u = 0; u + 1 < U && ok; ++u)
            for (std::size_t w = u + 1; w < U; ++w)
                if (dist2(step.positions[u], step.positions[w]) < safe2 * (1.0 - 1e-9)) {
                    ok = false;
                    break;
                }
        if (!ok) break;   // linearization should prevent this; keep the incumbent

        double f_new = trajectory_true_objective(prob, step.positions);
        if (f_new + 1e-12 * std::max(1.0, std::abs(res.true_objective)) < res.true_objective)
            break;

        double change = std::abs(f_new - res.true_objective);
        res.positions = std::move(step.positions);
        res.true_objective = f_new;
        res.objective_trace.push_back(f_new);
        res.sca_iterations = k + 1;
        if (change <= opt.sca_tol * std::max(1.0, std::abs(f_new))) break;
    }
    return res;
}

}  // namespace sagsim

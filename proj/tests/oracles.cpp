#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace oracles {

double bandwidth_objective(const std::vector<double>& shares, const std::vector<double>& q) {
    double f = 0.0;
    for (std::size_t v = 0; v < shares.size(); ++v)
        if (shares[v] > 0.0) f += shares[v] * std::log2(1.0 + q[v] / shares[v]);
    return f;
}

std::vector<double> simplex_project(std::vector<double> x, double total) {
    // Sort-based projection onto {x >= 0, sum x = total}.
    std::vector<double> u = x;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        double t = (cum - total) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    for (auto& xv : x) xv = std::max(0.0, xv - theta);
    return x;
}

std::vector<double> pg_bandwidth_maximizer(const std::vector<double>& q, double total,
                                           int max_iters, double tol) {
    const std::size_t n = q.size();
    std::vector<double> x(n, total / static_cast<double>(n));
    double fx = bandwidth_objective(x, q);

    double step = total;   // persists across iterations, grows on success
    int stalled = 0;
    for (int it = 0; it < max_iters && stalled < 4; ++it) {
        std::vector<double> g(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (q[v] <= 0.0) {
                g[v] = 0.0;
            } else if (x[v] <= 0.0) {
                g[v] = 60.0;   // pushes off the boundary; any large value works
            } else {
                g[v] = std::log1p(q[v] / x[v]) / M_LN2 - q[v] / (M_LN2 * (x[v] + q[v]));
            }
        }
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            std::vector<double> y(n);
            for (std::size_t v = 0; v < n; ++v) y[v] = x[v] + step * g[v];
            y = simplex_project(std::move(y), total);
            double fy = bandwidth_objective(y, q);
            double inner = 0.0;
            for (std::size_t v = 0; v < n; ++v) inner += g[v] * (y[v] - x[v]);
            if (inner <= 0.0) break;   // projected direction no longer ascends
            if (fy >= fx + 1e-4 * inner) {
                stalled = (fy - fx <= tol * std::max(1.0, std::abs(fx))) ? stalled + 1 : 0;
                x = std::move(y);
                fx = fy;
                step *= 2.0;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) ++stalled;
    }
    return x;
}

std::vector<double> waterfill_with_caps(const std::vector<double>& weights,
                                        const std::vector<double>& caps, double f_total) {
    const std::size_t n = weights.size();
    std::vector<double> plan(n, 0.0);
    std::vector<bool> pending(n, true);

    for (std::size_t guard = 0; guard <= n; ++guard) {
        double w_sum = 0.0, assigned = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (pending[v]) w_sum += weights[v];
            else assigned += plan[v];
        }
        double f_re = f_total - assigned;
        if (f_re < 0.0) f_re = 0.0;
        if (w_sum == 0.0) {
            for (std::size_t v = 0; v < n; ++v)
                if (pending[v]) plan[v] = 0.0;
            break;
        }

        // Most binding pending vessel: smallest cap-to-share ratio among
        // those whose share would overflow.
        std::size_t bind = n;
        double bind_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < n; ++v) {
            if (!pending[v]) continue;
            double share = weights[v] / w_sum * f_re;
            plan[v] = share;
            if (share > caps[v]) {
                double ratio = weights[v] > 0.0 ? caps[v] / weights[v]
                                                : -std::numeric_limits<double>::infinity();
                if (ratio < bind_ratio) {
                    bind_ratio = ratio;
                    bind = v;
                }
            }
        }
        if (bind == n) break;
        plan[bind] = caps[bind];
        pending[bind] = false;
    }
    return plan;
}

std::vector<double> brute_force_wmin(int n_nodes, const std::vector<RefEdge>& edges, int target) {
    std::vector<double> best(n_nodes, std::numeric_limits<double>::infinity());
    best[target] = 0.0;
    // Enumerate every simple path from every start node.
    for (int start = 0; start < n_nodes; ++start) {
        if (start == target) continue;
        std::function<double(int, std::vector<bool>&)> explore =
            [&](int node, std::vector<bool>& visited) -> double {
            if (node == target) return 0.0;
            double bestd = std::numeric_limits<double>::infinity();
            for (const auto& e : edges) {
                if (e.from != node || visited[e.to]) continue;
                visited[e.to] = true;
                double sub = explore(e.to, visited);
                visited[e.to] = false;
                if (sub + e.weight < bestd) bestd = sub + e.weight;
            }
            return bestd;
        };
        std::vector<bool> visited(n_nodes, false);
        visited[start] = true;
        best[start] = explore(start, visited);
    }
    return best;
}

double lattice_search_objective(const sagsim::TrajectoryProblem& prob, double spacing) {
    const std::size_t U = prob.prev_positions.size();
    std::vector<std::vector<sagsim::Vec2>> candidates(U);
    int steps = static_cast<int>(std::floor(prob.max_step_m / spacing));
    for (std::size_t u = 0; u < U; ++u) {
        for (int ix = -steps; ix <= steps; ++ix)
            for (int iy = -steps; iy <= steps; ++iy) {
                sagsim::Vec2 off{ix * spacing, iy * spacing};
                if (off.norm() <= prob.max_step_m)
                    candidates[u].push_back(prob.prev_positions[u] + off);
            }
    }
    double best = -std::numeric_limits<double>::infinity();
    std::vector<sagsim::Vec2> pos(U);
    std::function<void(std::size_t)> rec = [&](std::size_t u) {
        if (u == U) {
            best = std::max(best, sagsim::trajectory_true_objective(prob, pos));
            return;
        }
        for (const auto& c : candidates[u]) {
            bool ok = true;
            for (std::size_t w = 0; w < u; ++w)
                if (sagsim::dist(pos[w], c) < prob.d_safe_m) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pos[u] = c;
            rec(u + 1);
        }
    };
    rec(0);
    return best;
}

}  // namespace oracles

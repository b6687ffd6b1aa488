#pragma once

#include <vector>

#include "sagsim/geometry.hpp"

namespace sagsim {

/// Closed-form bandwidth split proportional to P_v * h_v over the served set.
/// Exhausts the budget and equalizes the per-vessel SNR argument
/// P h / (N0 B). Empty served set yields an empty plan; an all-zero weight
/// vector (deep fade) falls back to an equal split.
std::vector<double> allocate_bandwidth(const std::vector<double>& power_gain,
                                       double total_bandwidth_hz);

/// Capped proportional compute allocation. weights[v] = Q / r^c (completion
/// time); caps[v] = F^max in cycles. Rounds of proportional allotment with
/// violators pinned at their cap until every pending share fits. A zero total
/// weight allots nothing to the vessels still pending.
std::vector<double> allocate_compute(const std::vector<double>& weights,
                                     const std::vector<double>& caps,
                                     double f_total_cycles);

/// One vessel attached to a UAV in the trajectory subproblem. The rate as a
/// function of the squared horizontal distance phi is
///   R(phi) = B log2(1 + gamma / (height2 + phi)),
/// gamma = P * L0 * |h^R|^2 / (N0 * B)  (dimensionless).
struct Attractor {
    Vec2 vessel_pos;
    double bandwidth_hz = 0.0;
    double gamma = 0.0;
    double height2 = 0.0;   // squared UAV height
};

double attractor_rate(const Attractor& a, double phi);
double attractor_rate_gradient(const Attractor& a, double phi);

struct TrajectoryProblem {
    std::vector<Vec2> prev_positions;              // ball centers, one per UAV
    double max_step_m = 0.0;                       // S_max * tau
    double d_safe_m = 0.0;
    std::vector<std::vector<Attractor>> attractors;  // per UAV
};

struct TrajectoryResult {
    std::vector<Vec2> positions;
    double true_objective = 0.0;   // sum of true rates at the returned point
    int sca_iterations = 0;
    bool infeasible_linearization = false;
    std::vector<double> objective_trace;   // true objective per accepted iterate
};

struct SolverOptions {
    int sca_max_iters = 10;
    double sca_tol = 1e-3;       // relative true-objective change
    int pg_max_iters = 200;
    double pg_tol = 1e-6;        // relative step size
};

/// Single convex surrogate solve at the given linearization point. Returns
/// the new positions; the surrogate objective never decreases. When the
/// linearized collision set is infeasible at the incumbent the incumbent is
/// returned with the flag set.
struct ScaStepResult {
    std::vector<Vec2> positions;
    bool infeasible = false;
};
ScaStepResult sca_step(const TrajectoryProblem& prob, const std::vector<Vec2>& incumbent,
                       const SolverOptions& opt);

/// Full successive convex approximation loop starting from the previous-slot
/// positions (or an explicit feasible start). Accepted iterates keep the true
/// objective non-decreasing and satisfy both the speed bound and the true
/// pairwise-distance constraint.
TrajectoryResult optimize_trajectories(const TrajectoryProblem& prob,
                                       const SolverOptions& opt);
TrajectoryResult optimize_trajectories(const TrajectoryProblem& prob,
                                       const SolverOptions& opt,
                                       const std::vector<Vec2>& start);

double trajectory_true_objective(const TrajectoryProblem& prob,
                                 const std::vector<Vec2>& positions);

}  // namespace sagsim

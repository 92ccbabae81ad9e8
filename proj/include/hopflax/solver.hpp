#pragma once

#include "hopflax/scenario.hpp"
#include "hopflax/types.hpp"

#include <utility>
#include <vector>

namespace hopflax {

/// Discrete trajectories, one matrix per agent: column j holds the value at
/// time-reversed grid index j (column J is the query point).
using TrajectorySet = std::vector<Mat>;

struct SolveResult {
  double value = 0.0;
  TrajectorySet states;    // x_{i,0..J}, reversed convention
  TrajectorySet costates;  // p_{i,0..J}, p_{i,0} = 0
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  /// Time-forward reindexing: physical_trajectories[i].col(j) = states[i].col(J-j);
  /// column 0 is the query (physical start), column J the arrival end.
  TrajectorySet physical_trajectories;
  double delta = 0.0;
  double horizon = 0.0;  // query time t
};

/// Holistic Hamiltonian: sum_i H_i - w1*chi - w2*rho. env_time is the
/// physical time at which the environment is evaluated.
double holistic_hamiltonian(const Scenario& scenario, const AgentStates& states,
                            const AgentStates& costates, double env_time);

/// Saddle-point objective evaluated on given trajectories; the solve's
/// returned value is exactly this quantity.
double saddle_objective(const Scenario& scenario, const TrajectorySet& states,
                        const TrajectorySet& costates, double t);

/// Run the primal-dual iteration from the query point at time t.
/// Non-convergence within max_iter yields converged = false, not an error.
SolveResult solve(const Scenario& scenario, const AgentStates& query, double t);

/// Convenience: solve from the scenario's start states over its horizon.
SolveResult solve(const Scenario& scenario);

/// Left-endpoint quadrature of (w1*chi, w2*rho) along the physical
/// trajectory; recomputed from states only.
std::pair<double, double> trajectory_cost(const Scenario& scenario,
                                          const SolveResult& result);

/// Per-step dynamics mismatch |(x_{j-1} - x_j) - delta*f(x_j, a_j)| for
/// each agent (rows) and step j = 1..J (columns).
Mat rollout_residuals(const Scenario& scenario, const SolveResult& result);

/// Max entry of rollout_residuals.
double rollout_consistency(const Scenario& scenario, const SolveResult& result);

}  // namespace hopflax

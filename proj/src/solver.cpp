#include "hopflax/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

namespace hopflax {

namespace {

// Trust-region cap on the explicit state step.  The formation penalty is
// quartic, so the randomly scattered initial states can produce gradients
// large enough to make a fixed-rate step diverge; capping the displacement
// keeps the first iterations bounded and is inactive once the iterates
// settle (gradients shrink well below cap/eta/delta near the saddle).
constexpr double kMaxStateStep = 0.1;

Vec clipped_step(const Vec& step) {
  const double norm = step.norm();
  if (norm <= kMaxStateStep) return step;
  return step * (kMaxStateStep / norm);
}

}  // namespace

double holistic_hamiltonian(const Scenario& scenario, const AgentStates& states,
                            const AgentStates& costates, double env_time) {
  double h = 0.0;
  for (size_t i = 0; i < scenario.agents.size(); ++i) {
    h += hamiltonian(scenario.agents[i].model, scenario.env, states[i],
                     costates[i], env_time);
  }
  h -= scenario.weights.w1 *
       chi(states, scenario.goals(), scenario.heading_free_flags());
  h -= scenario.weights.w2 * rho(scenario.formation, states);
  return h;
}

double saddle_objective(const Scenario& scenario, const TrajectorySet& states,
                        const TrajectorySet& costates, double t) {
  const int J = static_cast<int>(states.front().cols()) - 1;
  const double delta = t / J;
  const size_t n = scenario.agents.size();
  double value = 0.0;
  AgentStates xj(n), pj(n);
  for (int j = 1; j <= J; ++j) {
    for (size_t i = 0; i < n; ++i) {
      value += costates[i].col(j).dot(states[i].col(j) - states[i].col(j - 1));
      xj[i] = states[i].col(j);
      pj[i] = costates[i].col(j);
    }
    value -= delta * holistic_hamiltonian(scenario, xj, pj, t - j * delta);
  }
  return value;
}

SolveResult solve(const Scenario& scenario, const AgentStates& query,
                  double t) {
  const size_t n = scenario.agents.size();
  const SolverParams& prm = scenario.solver;
  const int J = prm.J;
  const double delta = t / J;
  const double sigma = prm.sigma;
  const double tau = prm.tau;
  const auto goals = scenario.goals();
  const auto hf = scenario.heading_free_flags();
  const double w1 = scenario.weights.w1;
  const double w2 = scenario.weights.w2;

  for (size_t i = 0; i < n; ++i) {
    assert(query[i].size() == scenario.agents[i].model.state_dim());
  }

  // Bounding box of query and goal planar coordinates, inflated by 1.
  Vec2 lo(1e30, 1e30), hi(-1e30, -1e30);
  for (size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min({lo[k], query[i][k], goals[i][k]});
      hi[k] = std::max({hi[k], query[i][k], goals[i][k]});
    }
  }
  lo.array() -= 1.0;
  hi.array() += 1.0;

  std::mt19937_64 rng(prm.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };

  TrajectorySet x(n), p(n), z(n), x_old(n), xi(n);
  for (size_t i = 0; i < n; ++i) {
    const int dim = scenario.agents[i].model.state_dim();
    x[i].resize(dim, J + 1);
    p[i].setZero(dim, J + 1);
    for (int j = 0; j < J; ++j) {
      for (int k = 0; k < dim; ++k) {
        x[i](k, j) = (k < 2) ? uniform(lo[k], hi[k]) : uniform(-M_PI, M_PI);
      }
    }
    x[i].col(J) = query[i];
    for (int j = 1; j <= J; ++j) {
      for (int k = 0; k < dim; ++k) p[i](k, j) = uniform(-0.1, 0.1);
    }
    z[i] = x[i];
    x_old[i] = x[i];
    xi[i].resize(dim, J + 1);
  }

  SolveResult result;
  result.residual_history.reserve(1024);
  double eta = prm.eta0;
  bool converged = false;
  int iter = 0;
  AgentStates xi_j(n);

  while (iter < prm.max_iter) {
    ++iter;

    // Costate half-step.
    for (size_t i = 0; i < n; ++i) {
      const auto& model = scenario.agents[i].model;
      for (int j = 1; j <= J; ++j) {
        const Vec beta =
            p[i].col(j) + sigma * (z[i].col(j) - z[i].col(j - 1));
        p[i].col(j) = costate_prox(model, scenario.env, x[i].col(j), beta,
                                   t - j * delta, sigma, delta);
      }
    }

    // State half-step.
    for (size_t i = 0; i < n; ++i) x_old[i] = x[i];
    for (size_t i = 0; i < n; ++i) x[i].col(0) += tau * p[i].col(1);
    for (size_t i = 0; i < n; ++i) {
      for (int j = 1; j < J; ++j) {
        xi[i].col(j) =
            x_old[i].col(j) - tau * (p[i].col(j) - p[i].col(j + 1));
      }
    }
    for (int j = 1; j < J; ++j) {
      const double env_time = t - j * delta;
      for (size_t i = 0; i < n; ++i) xi_j[i] = xi[i].col(j);
      for (size_t i = 0; i < n; ++i) {
        const auto& agent = scenario.agents[i];
        Vec grad = hamiltonian_state_gradient(agent.model, scenario.env,
                                              xi_j[i], p[i].col(j), env_time);
        if (w1 != 0.0) {
          grad -= w1 * chi_gradient_single(xi_j[i], goals[i], hf[i]);
        }
        if (w2 != 0.0) {
          grad -= w2 * rho_gradient_single(scenario.formation, xi_j,
                                           static_cast<int>(i));
        }
        x[i].col(j) = xi_j[i] + clipped_step(eta * delta * grad);
      }
    }

    // Extrapolation and residual.
    double residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
      residual =
          std::max(residual, (x[i] - x_old[i]).cwiseAbs().maxCoeff());
      z[i] = 2.0 * x[i] - x_old[i];
    }
    result.residual_history.push_back(residual);

    if (residual <= prm.tol) {
      converged = true;
      break;
    }
    if (iter >= prm.decay_start &&
        (iter - prm.decay_start) % prm.decay_every == 0) {
      eta = std::max(prm.eta_min, eta * prm.eta_decay);
    }
  }

  result.states = std::move(x);
  result.costates = std::move(p);
  result.iterations = iter;
  result.converged = converged;
  result.delta = delta;
  result.horizon = t;
  result.value = saddle_objective(scenario, result.states, result.costates, t);
  result.physical_trajectories.resize(n);
  for (size_t i = 0; i < n; ++i) {
    result.physical_trajectories[i] = result.states[i].rowwise().reverse();
  }
  return result;
}

SolveResult solve(const Scenario& scenario) {
  return solve(scenario, scenario.starts(), scenario.horizon);
}

std::pair<double, double> trajectory_cost(const Scenario& scenario,
                                          const SolveResult& result) {
  const int J = static_cast<int>(result.states.front().cols()) - 1;
  const size_t n = scenario.agents.size();
  const auto goals = scenario.goals();
  const auto hf = scenario.heading_free_flags();
  double goal_cost = 0.0, formation_cost = 0.0;
  AgentStates xj(n);
  for (int j = 0; j < J; ++j) {  // left endpoints of the physical grid
    for (size_t i = 0; i < n; ++i) {
      xj[i] = result.physical_trajectories[i].col(j);
    }
    goal_cost += result.delta * scenario.weights.w1 * chi(xj, goals, hf);
    formation_cost +=
        result.delta * scenario.weights.w2 * rho(scenario.formation, xj);
  }
  return {goal_cost, formation_cost};
}

Mat rollout_residuals(const Scenario& scenario, const SolveResult& result) {
  const int J = static_cast<int>(result.states.front().cols()) - 1;
  const size_t n = scenario.agents.size();
  const double t = result.horizon;
  const double delta = result.delta;
  Mat res(n, J);
  for (size_t i = 0; i < n; ++i) {
    const auto& agent = scenario.agents[i];
    for (int j = 1; j <= J; ++j) {
      const double env_time = t - j * delta;
      const Vec xj = result.states[i].col(j);
      const Vec a = feedback_control(agent.model, scenario.env, xj,
                                     result.costates[i].col(j), env_time);
      const Vec f = dynamics_rhs(agent.model, scenario.env, xj, a, env_time);
      res(i, j - 1) =
          (result.states[i].col(j - 1) - xj - delta * f).norm();
    }
  }
  return res;
}

double rollout_consistency(const Scenario& scenario,
                           const SolveResult& result) {
  return rollout_residuals(scenario, result).maxCoeff();
}

}  // namespace hopflax

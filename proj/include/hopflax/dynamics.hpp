#pragma once

#include "hopflax/environment.hpp"
#include "hopflax/types.hpp"

#include <string>

namespace hopflax {

/// Motion model of a single agent.
///
/// Isotropic: planar state, xdot = v(x,t)*a with |a| <= 1; the speed comes
/// from the environment. ReedsShepp: state (x, y, heading) with bounded
/// tangential speed V and angular speed W, reversing allowed.
struct AgentModel {
  enum class Kind { Isotropic, ReedsShepp };

  Kind kind = Kind::Isotropic;
  double max_speed = 1.0;      // V (ReedsShepp)
  double max_turn_rate = 1.0;  // W (ReedsShepp)

  static AgentModel isotropic();
  static AgentModel reeds_shepp(double V, double W);

  int state_dim() const { return kind == Kind::Isotropic ? 2 : 3; }
  int control_dim() const { return 2; }
};

struct AgentSpec {
  AgentModel model;
  Vec start;
  Vec goal;
  bool heading_free = false;  // drop heading from the goal penalty
  std::string label;
};

/// Individual Hamiltonian H_i(x, p, t); always >= 0 and positively
/// homogeneous in p.
double hamiltonian(const AgentModel& model, const Environment& env,
                   const Vec& x, const Vec& p, double t);

/// Closed-form minimizer of delta*H(x, p, t) + |p - beta|^2 / (2 sigma).
/// Shrinkage for isotropic agents, directional shrinkage plus
/// soft-thresholding of the heading costate for Reeds-Shepp cars.
Vec costate_prox(const AgentModel& model, const Environment& env, const Vec& x,
                 const Vec& beta, double t, double sigma, double delta);

/// Gradient of H with respect to the state; subgradient 0 at kinks.
Vec hamiltonian_state_gradient(const AgentModel& model, const Environment& env,
                               const Vec& x, const Vec& p, double t);

/// Control attaining the sup in H: <-f(x, a, t), p> = H(x, p, t).
Vec feedback_control(const AgentModel& model, const Environment& env,
                     const Vec& x, const Vec& p, double t);

/// Dynamics right-hand side f(x, a, t), obstacle-masked.
Vec dynamics_rhs(const AgentModel& model, const Environment& env, const Vec& x,
                 const Vec& a, double t);

}  // namespace hopflax

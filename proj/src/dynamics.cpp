#include "hopflax/dynamics.hpp"

#include <cassert>
#include <cmath>

namespace hopflax {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

AgentModel AgentModel::isotropic() { return AgentModel{}; }

AgentModel AgentModel::reeds_shepp(double V, double W) {
  AgentModel m;
  m.kind = Kind::ReedsShepp;
  m.max_speed = V;
  m.max_turn_rate = W;
  return m;
}

double hamiltonian(const AgentModel& model, const Environment& env,
                   const Vec& x, const Vec& p, double t) {
  assert(x.size() == model.state_dim() && p.size() == model.state_dim());
  switch (model.kind) {
    case AgentModel::Kind::Isotropic:
      return masked_speed(env, x.head<2>(), t) * p.norm();
    case AgentModel::Kind::ReedsShepp: {
      const double mask = obstacle_mask(env, x.head<2>(), t);
      const double s = p[0] * std::cos(x[2]) + p[1] * std::sin(x[2]);
      return mask * (model.max_speed * std::abs(s) +
                     model.max_turn_rate * std::abs(p[2]));
    }
  }
  return 0.0;
}

Vec costate_prox(const AgentModel& model, const Environment& env, const Vec& x,
                 const Vec& beta, double t, double sigma, double delta) {
  const double sd = sigma * delta;
  switch (model.kind) {
    case AgentModel::Kind::Isotropic: {
      const double v = masked_speed(env, x.head<2>(), t);
      const double n = beta.norm();
      const double factor = (n > 0.0) ? std::max(0.0, 1.0 - sd * v / n) : 0.0;
      return factor * beta;
    }
    case AgentModel::Kind::ReedsShepp: {
      const double mask = obstacle_mask(env, x.head<2>(), t);
      const double V = model.max_speed * mask;
      const double W = model.max_turn_rate * mask;
      const Vec2 gamma(std::cos(x[2]), std::sin(x[2]));
      const double s = gamma.dot(beta.head<2>());
      Vec p(3);
      const double shrink =
          (std::abs(s) > 0.0) ? std::min(1.0, V * sd / std::abs(s)) : 0.0;
      p.head<2>() = beta.head<2>() - shrink * s * gamma;
      const double n3 = std::abs(beta[2]);
      p[2] = (n3 > 0.0) ? std::max(0.0, 1.0 - W * sd / n3) * beta[2] : 0.0;
      return p;
    }
  }
  return beta;
}

Vec hamiltonian_state_gradient(const AgentModel& model, const Environment& env,
                               const Vec& x, const Vec& p, double t) {
  switch (model.kind) {
    case AgentModel::Kind::Isotropic:
      return p.norm() * masked_speed_gradient(env, x.head<2>(), t);
    case AgentModel::Kind::ReedsShepp: {
      const double mask = obstacle_mask(env, x.head<2>(), t);
      const Vec2 mask_grad = obstacle_mask_gradient(env, x.head<2>(), t);
      const double c = std::cos(x[2]);
      const double sn = std::sin(x[2]);
      const double s = p[0] * c + p[1] * sn;
      const double bracket = model.max_speed * std::abs(s) +
                             model.max_turn_rate * std::abs(p[2]);
      Vec g(3);
      g.head<2>() = bracket * mask_grad;
      g[2] = mask * model.max_speed * sgn(s) * (-p[0] * sn + p[1] * c);
      return g;
    }
  }
  return Vec::Zero(x.size());
}

Vec feedback_control(const AgentModel& model, const Environment& env,
                     const Vec& x, const Vec& p, double t) {
  (void)env;
  switch (model.kind) {
    case AgentModel::Kind::Isotropic: {
      const double n = p.norm();
      return (n > 0.0) ? Vec(-p / n) : Vec(Vec::Zero(2));
    }
    case AgentModel::Kind::ReedsShepp: {
      const double s = p[0] * std::cos(x[2]) + p[1] * std::sin(x[2]);
      Vec a(2);
      a[0] = -sgn(s);
      a[1] = -sgn(p[2]);
      return a;
    }
  }
  return Vec::Zero(2);
}

Vec dynamics_rhs(const AgentModel& model, const Environment& env, const Vec& x,
                 const Vec& a, double t) {
  switch (model.kind) {
    case AgentModel::Kind::Isotropic:
      return masked_speed(env, x.head<2>(), t) * a;
    case AgentModel::Kind::ReedsShepp: {
      const double mask = obstacle_mask(env, x.head<2>(), t);
      Vec f(3);
      f[0] = mask * model.max_speed * a[0] * std::cos(x[2]);
      f[1] = mask * model.max_speed * a[0] * std::sin(x[2]);
      f[2] = mask * model.max_turn_rate * a[1];
      return f;
    }
  }
  return Vec::Zero(x.size());
}

}  // namespace hopflax

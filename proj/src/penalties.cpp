#include "hopflax/penalties.hpp"

#include <cassert>
#include <cmath>

namespace hopflax {

FormationSpec FormationSpec::none() { return FormationSpec{}; }

FormationSpec FormationSpec::pairwise(std::vector<Pair> pairs) {
  FormationSpec s;
  s.kind = Kind::PairwiseDistance;
  s.pairs = std::move(pairs);
  return s;
}

FormationSpec FormationSpec::square(double side,
                                    const std::array<int, 4>& diagonals) {
  FormationSpec s;
  s.kind = Kind::Square;
  s.side = side;
  s.diagonals = diagonals;
  return s;
}

namespace {

double goal_dist_sq(const Vec& x, const Vec& goal, bool heading_free) {
  if (heading_free && x.size() == 3) {
    return (x.head<2>() - goal.head<2>()).squaredNorm();
  }
  return (x - goal).squaredNorm();
}

}  // namespace

double chi(const AgentStates& states, const AgentStates& goals,
           const std::vector<bool>& heading_free) {
  assert(states.size() == goals.size());
  double total = 0.0;
  for (size_t i = 0; i < states.size(); ++i) {
    const bool hf = i < heading_free.size() && heading_free[i];
    total += 1.0 - std::exp(-goal_dist_sq(states[i], goals[i], hf));
  }
  return total;
}

Vec chi_gradient_single(const Vec& x, const Vec& goal, bool heading_free) {
  Vec g = Vec::Zero(x.size());
  if (heading_free && x.size() == 3) {
    const Vec2 d = x.head<2>() - goal.head<2>();
    g.head<2>() = 2.0 * std::exp(-d.squaredNorm()) * d;
    return g;
  }
  const Vec d = x - goal;
  g = 2.0 * std::exp(-d.squaredNorm()) * d;
  return g;
}

double rho(const FormationSpec& spec, const AgentStates& states) {
  switch (spec.kind) {
    case FormationSpec::Kind::None:
      return 0.0;
    case FormationSpec::Kind::PairwiseDistance: {
      // Ordered-pair convention: each listed pair counts twice.
      double total = 0.0;
      for (const auto& pr : spec.pairs) {
        const Vec2 d = states[pr.a].head<2>() - states[pr.b].head<2>();
        const double e = d.squaredNorm() - pr.distance * pr.distance;
        total += 2.0 * e * e;
      }
      return total;
    }
    case FormationSpec::Kind::Square: {
      const Vec2 A = states[spec.diagonals[0]].head<2>();
      const Vec2 C = states[spec.diagonals[1]].head<2>();
      const Vec2 B = states[spec.diagonals[2]].head<2>();
      const Vec2 D = states[spec.diagonals[3]].head<2>();
      const double dd2 = 2.0 * spec.side * spec.side;
      const double t1 = (A - C).squaredNorm() - dd2;
      const double t2 = (B - D).squaredNorm() - dd2;
      const double t3 = ((A + C) - (B + D)).squaredNorm();
      const double t4 = (A - C).dot(B - D);
      return t1 * t1 + t2 * t2 + t3 * t3 + t4 * t4;
    }
  }
  return 0.0;
}

Vec rho_gradient_single(const FormationSpec& spec, const AgentStates& states,
                        int agent_index) {
  Vec g = Vec::Zero(states[agent_index].size());
  switch (spec.kind) {
    case FormationSpec::Kind::None:
      return g;
    case FormationSpec::Kind::PairwiseDistance: {
      Vec2 acc = Vec2::Zero();
      for (const auto& pr : spec.pairs) {
        if (pr.a != agent_index && pr.b != agent_index) continue;
        const int other = pr.a == agent_index ? pr.b : pr.a;
        const Vec2 d =
            states[agent_index].head<2>() - states[other].head<2>();
        const double e = d.squaredNorm() - pr.distance * pr.distance;
        acc += 8.0 * e * d;
      }
      g.head<2>() = acc;
      return g;
    }
    case FormationSpec::Kind::Square: {
      const Vec2 A = states[spec.diagonals[0]].head<2>();
      const Vec2 C = states[spec.diagonals[1]].head<2>();
      const Vec2 B = states[spec.diagonals[2]].head<2>();
      const Vec2 D = states[spec.diagonals[3]].head<2>();
      const double dd2 = 2.0 * spec.side * spec.side;
      const double t1 = (A - C).squaredNorm() - dd2;
      const double t2 = (B - D).squaredNorm() - dd2;
      const Vec2 S = (A + C) - (B + D);
      const double t3 = S.squaredNorm();
      const double t4 = (A - C).dot(B - D);
      Vec2 acc = Vec2::Zero();
      if (agent_index == spec.diagonals[0]) {
        acc = 4.0 * t1 * (A - C) + 4.0 * t3 * S + 2.0 * t4 * (B - D);
      } else if (agent_index == spec.diagonals[1]) {
        acc = -4.0 * t1 * (A - C) + 4.0 * t3 * S - 2.0 * t4 * (B - D);
      } else if (agent_index == spec.diagonals[2]) {
        acc = 4.0 * t2 * (B - D) - 4.0 * t3 * S + 2.0 * t4 * (A - C);
      } else if (agent_index == spec.diagonals[3]) {
        acc = -4.0 * t2 * (B - D) - 4.0 * t3 * S - 2.0 * t4 * (A - C);
      }
      g.head<2>() = acc;
      return g;
    }
  }
  return g;
}

}  // namespace hopflax

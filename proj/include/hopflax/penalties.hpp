#pragma once

#include "hopflax/types.hpp"

#include <array>
#include <vector>

namespace hopflax {

/// Formation target. PairwiseDistance penalizes squared deviations of
/// squared inter-agent distances; Square penalizes the four algebraic
/// conditions characterizing a square of the given side length, with the
/// listed diagonal pairs at opposite corners.
struct FormationSpec {
  enum class Kind { None, PairwiseDistance, Square };

  struct Pair {
    int a = 0;
    int b = 0;
    double distance = 0.0;  // target separation, > 0
  };

  Kind kind = Kind::None;
  std::vector<Pair> pairs;            // PairwiseDistance
  double side = 0.0;                  // Square
  std::array<int, 4> diagonals{0, 1, 2, 3};  // {A, C, B, D}; A-C and B-D opposite

  static FormationSpec none();
  static FormationSpec pairwise(std::vector<Pair> pairs);
  static FormationSpec square(double side, const std::array<int, 4>& diagonals);
};

struct Weights {
  double w1 = 1.0;  // goal
  double w2 = 0.0;  // formation
};

/// Goal penalty: sum_i 1 - exp(-|x_i - goal_i|^2). When heading_free[i] is
/// set, the heading coordinate of a 3d state is excluded from the distance.
double chi(const AgentStates& states, const AgentStates& goals,
           const std::vector<bool>& heading_free = {});

/// Gradient of one agent's chi term.
Vec chi_gradient_single(const Vec& x, const Vec& goal,
                        bool heading_free = false);

/// Formation penalty; uses planar positions (head(2)) of each state.
double rho(const FormationSpec& spec, const AgentStates& states);

/// Gradient of rho with respect to one agent's state, others frozen.
/// Heading component of car states is always zero.
Vec rho_gradient_single(const FormationSpec& spec, const AgentStates& states,
                        int agent_index);

}  // namespace hopflax

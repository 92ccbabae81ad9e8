#pragma once

#include "hopflax/types.hpp"

#include <functional>

namespace hopflax {
namespace oracle {

/// Axis-aligned grid centered at `center` with half-width `radius` and the
/// given spacing along every axis. Intended for exhaustive searches in
/// dimensions <= 3.
struct GridSearchSpec {
  Vec center;
  double radius = 1.0;
  double spacing = 0.1;
};

struct HopfLaxResult {
  double value = 0.0;
  Vec argmin;            // outer minimizer x*
  bool feasible = false; // at least one x* with an interior sup
  int excluded = 0;      // outer points whose inner sup hit the grid boundary
};

/// Brute-force evaluation of the classical Hopf-Lax formula
/// inf_x* sup_p* { g(x*) + <x - x*, p*> - t H(p*) } by nested grid scans.
/// Outer points whose sup is attained on the p-grid boundary are treated
/// as unbounded (unreachable) and excluded.
HopfLaxResult classical_hopf_lax(
    const std::function<double(const Vec&)>& hamiltonian,
    const std::function<double(const Vec&)>& initial, const Vec& x, double t,
    const GridSearchSpec& outer, const GridSearchSpec& inner);

/// Exhaustive minimizer of `objective` over the grid.
Vec prox_grid_oracle(const std::function<double(const Vec&)>& objective,
                     const GridSearchSpec& spec);

/// Central finite differences, component-wise.
Vec finite_difference_gradient(const std::function<double(const Vec&)>& f,
                               const Vec& x, double h);

}  // namespace oracle
}  // namespace hopflax

#pragma once

#include "hopflax/scenario.hpp"
#include "hopflax/solver.hpp"

#include <string>

namespace hopflax {
namespace io {

/// Trajectory table in physical time order, one row per (step, agent).
/// Numeric fields are printed with round-trip precision; components an
/// agent does not have are left empty.
std::string trajectory_csv(const Scenario& scenario, const SolveResult& result);

/// Run summary as a JSON document. Deterministic for a fixed seed: no
/// timing information is included here.
std::string summary_json(const Scenario& scenario, const SolveResult& result);

/// Static snapshot of the scene at the given physical time: speed-field
/// shading, obstacles, goals, trailing paths, and agent positions.
std::string svg_snapshot(const Scenario& scenario, const SolveResult& result,
                         double time);

/// First physical time from which every agent stays within `tol` of its
/// goal for the rest of the horizon; +inf if the run never settles.
double arrival_time(const Scenario& scenario, const SolveResult& result,
                    double tol = 0.05);

}  // namespace io
}  // namespace hopflax

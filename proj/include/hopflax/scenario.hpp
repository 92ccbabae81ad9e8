#pragma once

#include "hopflax/dynamics.hpp"
#include "hopflax/environment.hpp"
#include "hopflax/penalties.hpp"
#include "hopflax/types.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopflax {

struct SolverParams {
  double sigma = 1.0;
  double tau = 0.25;
  int J = 100;
  double eta0 = 0.25;
  double eta_decay = 0.5;
  int decay_start = 5000;
  int decay_every = 1000;
  double eta_min = 1e-4;
  double tol = 5e-4;
  int max_iter = 100000;
  std::uint64_t seed = 0;
};

struct Scenario {
  std::string name;
  std::vector<AgentSpec> agents;
  Environment env;
  FormationSpec formation;
  Weights weights;
  double horizon = 1.0;
  SolverParams solver;

  std::vector<bool> heading_free_flags() const;
  AgentStates goals() const;
  AgentStates starts() const;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse and validate a JSON scenario document. Unknown keys are rejected;
/// validation failures throw ScenarioError naming the offending field.
Scenario load_scenario(const std::string& text);

/// Serialize to the same schema accepted by load_scenario.
std::string serialize_scenario(const Scenario& s);

/// Validate an in-memory scenario (same checks as load_scenario).
void validate_scenario(const Scenario& s);

/// Built-in instances: triangle_time, triangle_formation, square_hetero,
/// moving_obstacles. Throws ScenarioError on unknown names.
Scenario builtin(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace hopflax

#include "hopflax/scenario.hpp"

#include <doctest.h>

#include <string>

using namespace hopflax;

namespace {

const char* kMinimal = R"({
  "name": "minimal",
  "horizon": 1.0,
  "agents": [{"model": "isotropic", "start": [0, 0], "goal": [1, 0], "label": "a"}]
})";

}  // namespace

TEST_CASE("minimal document gets all solver defaults") {
  const Scenario s = load_scenario(kMinimal);
  CHECK(s.solver.sigma == 1.0);
  CHECK(s.solver.tau == 0.25);
  CHECK(s.solver.tol == 5e-4);
  CHECK(s.solver.J == 100);
  CHECK(s.agents.size() == 1);
  CHECK(s.env.obstacles.empty());
  CHECK(s.env.mask_sharpness == 100.0);
  CHECK(s.formation.kind == FormationSpec::Kind::None);
}

TEST_CASE("step size product is validated") {
  const std::string doc = R"({
    "horizon": 1.0,
    "agents": [{"model": "isotropic", "start": [0, 0], "goal": [1, 0]}],
    "solver": {"sigma": 2.0, "tau": 0.25}
  })";
  CHECK_THROWS_WITH_AS(load_scenario(doc),
                       doctest::Contains("sigma*tau exceeds 0.25"),
                       ScenarioError);
}

TEST_CASE("zero agents are rejected") {
  CHECK_THROWS_WITH_AS(load_scenario(R"({"horizon": 1.0, "agents": []})"),
                       doctest::Contains("agents"), ScenarioError);
}

TEST_CASE("unknown keys are rejected") {
  const std::string doc = R"({
    "horizon": 1.0, "frobnicate": true,
    "agents": [{"model": "isotropic", "start": [0, 0], "goal": [1, 0]}]
  })";
  CHECK_THROWS_WITH_AS(load_scenario(doc), doctest::Contains("frobnicate"),
                       ScenarioError);
}

TEST_CASE("dimension mismatches name the field") {
  const std::string doc = R"({
    "horizon": 1.0,
    "agents": [{"model": "reeds_shepp", "start": [0, 0], "goal": [1, 0, 0]}]
  })";
  CHECK_THROWS_WITH_AS(load_scenario(doc), doctest::Contains("agents[0].start"),
                       ScenarioError);
}

TEST_CASE("malformed documents raise a parse error") {
  CHECK_THROWS_WITH_AS(load_scenario("{not json"),
                       doctest::Contains("parse error"), ScenarioError);
}

TEST_CASE("serialization round-trips") {
  for (const auto& name : builtin_names()) {
    const Scenario s = builtin(name);
    const std::string text = serialize_scenario(s);
    const Scenario reloaded = load_scenario(text);
    CHECK(serialize_scenario(reloaded) == text);
  }
  const Scenario minimal = load_scenario(kMinimal);
  CHECK(serialize_scenario(load_scenario(serialize_scenario(minimal))) ==
        serialize_scenario(minimal));
}

TEST_CASE("builtins match their published parameters") {
  const Scenario tri = builtin("triangle_time");
  CHECK(tri.weights.w1 == 1.0);
  CHECK(tri.weights.w2 == 0.5);

  const Scenario trif = builtin("triangle_formation");
  CHECK(trif.weights.w1 == 0.5);
  CHECK(trif.weights.w2 == 4.0);

  const Scenario sq = builtin("square_hetero");
  int cars = 0, dots = 0;
  for (const auto& a : sq.agents) {
    if (a.model.kind == AgentModel::Kind::ReedsShepp) {
      ++cars;
      CHECK(a.model.max_speed == 1.0);
      CHECK(a.model.max_turn_rate == 2.0);
    } else {
      ++dots;
    }
  }
  CHECK(cars == 2);
  CHECK(dots == 2);
  CHECK(sq.weights.w1 == 1.0);
  CHECK(sq.weights.w2 == 1.0);

  const Scenario mv = builtin("moving_obstacles");
  CHECK(mv.env.speed(Vec2(M_PI / 2, M_PI / 2)) == doctest::Approx(1.25));
  CHECK(mv.env.obstacles.size() == 2);
  CHECK(mv.env.obstacles[0].orbiting);
  CHECK(mv.weights.w2 == 3.0);

  for (const auto& name : builtin_names()) {
    CHECK_NOTHROW(validate_scenario(builtin(name)));
  }
  CHECK_THROWS_AS(builtin("nonsense"), ScenarioError);
}

#include "hopflax/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <initializer_list>
#include <set>
#include <sstream>

namespace hopflax {

using nlohmann::json;

std::vector<bool> Scenario::heading_free_flags() const {
  std::vector<bool> flags(agents.size());
  for (size_t i = 0; i < agents.size(); ++i) flags[i] = agents[i].heading_free;
  return flags;
}

AgentStates Scenario::goals() const {
  AgentStates g(agents.size());
  for (size_t i = 0; i < agents.size(); ++i) g[i] = agents[i].goal;
  return g;
}

AgentStates Scenario::starts() const {
  AgentStates s(agents.size());
  for (size_t i = 0; i < agents.size(); ++i) s[i] = agents[i].start;
  return s;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ScenarioError(field + ": " + msg);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) fail(where.empty() ? key : where + "." + key,
                             "unknown key");
  }
}

Vec parse_vec(const json& arr, const std::string& field) {
  if (!arr.is_array()) fail(field, "expected an array of numbers");
  Vec v(arr.size());
  for (size_t k = 0; k < arr.size(); ++k) v[k] = arr[k].get<double>();
  return v;
}

Vec2 parse_vec2(const json& arr, const std::string& field) {
  const Vec v = parse_vec(arr, field);
  if (v.size() != 2) fail(field, "expected exactly 2 components");
  return Vec2(v[0], v[1]);
}

AgentSpec parse_agent(const json& a, const std::string& where) {
  check_keys(a, where,
             {"model", "start", "goal", "heading_free", "V", "W", "label"});
  AgentSpec spec;
  const std::string model = a.value("model", "isotropic");
  if (model == "isotropic") {
    spec.model = AgentModel::isotropic();
  } else if (model == "reeds_shepp") {
    spec.model = AgentModel::reeds_shepp(a.value("V", 1.0), a.value("W", 1.0));
  } else {
    fail(where + ".model", "unknown model '" + model + "'");
  }
  if (!a.contains("start")) fail(where + ".start", "missing");
  if (!a.contains("goal")) fail(where + ".goal", "missing");
  spec.start = parse_vec(a["start"], where + ".start");
  spec.goal = parse_vec(a["goal"], where + ".goal");
  spec.heading_free = a.value("heading_free", false);
  spec.label = a.value("label", "");
  return spec;
}

Environment parse_environment(const json& e) {
  check_keys(e, "environment", {"speed", "obstacles", "mask_sharpness"});
  Environment env;
  if (e.contains("speed")) {
    const json& s = e["speed"];
    check_keys(s, "environment.speed", {"type", "value", "base", "amplitude"});
    const std::string type = s.value("type", "constant");
    if (type == "constant") {
      env.speed = SpeedField::constant(s.value("value", 1.0));
    } else if (type == "sinusoidal") {
      env.speed =
          SpeedField::sinusoidal(s.value("base", 1.0), s.value("amplitude", 0.0));
    } else {
      fail("environment.speed.type", "unknown speed type '" + type + "'");
    }
  }
  if (e.contains("obstacles")) {
    size_t k = 0;
    for (const json& o : e["obstacles"]) {
      const std::string where = "environment.obstacles[" + std::to_string(k) + "]";
      check_keys(o, where, {"radius", "center", "orbit"});
      if (!o.contains("radius")) fail(where + ".radius", "missing");
      const double radius = o["radius"].get<double>();
      if (o.contains("orbit")) {
        const json& orb = o["orbit"];
        check_keys(orb, where + ".orbit",
                   {"center", "radius", "angular_rate", "phase"});
        env.obstacles.push_back(CircleObstacle::orbit(
            parse_vec2(orb.value("center", json::array({0.0, 0.0})),
                       where + ".orbit.center"),
            orb.value("radius", 0.0), orb.value("angular_rate", 0.0),
            orb.value("phase", 0.0), radius));
      } else if (o.contains("center")) {
        env.obstacles.push_back(CircleObstacle::fixed(
            parse_vec2(o["center"], where + ".center"), radius));
      } else {
        fail(where, "needs either center or orbit");
      }
      ++k;
    }
  }
  env.mask_sharpness = e.value("mask_sharpness", 100.0);
  return env;
}

FormationSpec parse_formation(const json& f) {
  check_keys(f, "formation", {"type", "pairs", "side", "diagonals"});
  const std::string type = f.value("type", "none");
  if (type == "none") return FormationSpec::none();
  if (type == "pairwise") {
    std::vector<FormationSpec::Pair> pairs;
    size_t k = 0;
    for (const json& p : f.value("pairs", json::array())) {
      const std::string where = "formation.pairs[" + std::to_string(k) + "]";
      check_keys(p, where, {"a", "b", "distance"});
      pairs.push_back({p.value("a", 0), p.value("b", 0), p.value("distance", 0.0)});
      ++k;
    }
    return FormationSpec::pairwise(std::move(pairs));
  }
  if (type == "square") {
    if (!f.contains("diagonals")) fail("formation.diagonals", "missing");
    const json& d = f["diagonals"];
    if (!d.is_array() || d.size() != 2 || d[0].size() != 2 || d[1].size() != 2) {
      fail("formation.diagonals", "expected two index pairs [[A,C],[B,D]]");
    }
    return FormationSpec::square(
        f.value("side", 0.0),
        {d[0][0].get<int>(), d[0][1].get<int>(), d[1][0].get<int>(),
         d[1][1].get<int>()});
  }
  fail("formation.type", "unknown formation type '" + type + "'");
}

SolverParams parse_solver(const json& s) {
  check_keys(s, "solver",
             {"sigma", "tau", "J", "eta0", "eta_decay", "decay_start",
              "decay_every", "eta_min", "tol", "max_iter", "seed"});
  SolverParams p;
  p.sigma = s.value("sigma", p.sigma);
  p.tau = s.value("tau", p.tau);
  p.J = s.value("J", p.J);
  p.eta0 = s.value("eta0", p.eta0);
  p.eta_decay = s.value("eta_decay", p.eta_decay);
  p.decay_start = s.value("decay_start", p.decay_start);
  p.decay_every = s.value("decay_every", p.decay_every);
  p.eta_min = s.value("eta_min", p.eta_min);
  p.tol = s.value("tol", p.tol);
  p.max_iter = s.value("max_iter", p.max_iter);
  p.seed = s.value("seed", p.seed);
  return p;
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (s.agents.empty()) fail("agents", "at least one agent is required");
  if (!(s.horizon > 0.0)) fail("horizon", "must be positive");
  for (size_t i = 0; i < s.agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const auto& a = s.agents[i];
    const int dim = a.model.state_dim();
    if (a.start.size() != dim)
      fail(where + ".start", "dimension mismatch, expected " +
                                 std::to_string(dim) + " components");
    if (a.goal.size() != dim)
      fail(where + ".goal", "dimension mismatch, expected " +
                                std::to_string(dim) + " components");
    if (a.model.kind == AgentModel::Kind::ReedsShepp) {
      if (!(a.model.max_speed > 0.0)) fail(where + ".V", "must be positive");
      if (!(a.model.max_turn_rate > 0.0)) fail(where + ".W", "must be positive");
    }
  }
  switch (s.env.speed.kind) {
    case SpeedField::Kind::Constant:
      if (!(s.env.speed.value > 0.0))
        fail("environment.speed.value", "must be positive");
      break;
    case SpeedField::Kind::Sinusoidal:
      if (!(s.env.speed.amplitude >= 0.0) ||
          !(s.env.speed.base > s.env.speed.amplitude))
        fail("environment.speed", "requires base > amplitude >= 0");
      break;
  }
  for (size_t k = 0; k < s.env.obstacles.size(); ++k) {
    if (!(s.env.obstacles[k].radius > 0.0))
      fail("environment.obstacles[" + std::to_string(k) + "].radius",
           "must be positive");
  }
  if (!(s.env.mask_sharpness > 0.0))
    fail("environment.mask_sharpness", "must be positive");
  if (s.weights.w1 < 0.0 || s.weights.w2 < 0.0)
    fail("weights", "must be nonnegative");
  if (!(s.weights.w1 + s.weights.w2 > 0.0))
    fail("weights", "w1 + w2 must be positive");
  switch (s.formation.kind) {
    case FormationSpec::Kind::None:
      break;
    case FormationSpec::Kind::PairwiseDistance:
      for (size_t k = 0; k < s.formation.pairs.size(); ++k) {
        const auto& pr = s.formation.pairs[k];
        const std::string where = "formation.pairs[" + std::to_string(k) + "]";
        const int n = static_cast<int>(s.agents.size());
        if (pr.a < 0 || pr.a >= n || pr.b < 0 || pr.b >= n || pr.a == pr.b)
          fail(where, "invalid agent pair");
        if (!(pr.distance > 0.0)) fail(where + ".distance", "must be positive");
      }
      break;
    case FormationSpec::Kind::Square: {
      if (!(s.formation.side > 0.0)) fail("formation.side", "must be positive");
      std::set<int> idx(s.formation.diagonals.begin(),
                        s.formation.diagonals.end());
      if (idx.size() != 4 || *idx.begin() < 0 ||
          *idx.rbegin() >= static_cast<int>(s.agents.size()))
        fail("formation.diagonals", "need four distinct valid agent indices");
      break;
    }
  }
  const auto& p = s.solver;
  if (!(p.sigma > 0.0)) fail("solver.sigma", "must be positive");
  if (!(p.tau > 0.0)) fail("solver.tau", "must be positive");
  if (p.sigma * p.tau > 0.25) fail("solver", "sigma*tau exceeds 0.25");
  if (p.J < 2) fail("solver.J", "must be at least 2");
  if (!(p.tol > 0.0)) fail("solver.tol", "must be positive");
  if (!(p.eta0 > 0.0)) fail("solver.eta0", "must be positive");
  if (!(p.eta_decay > 0.0 && p.eta_decay < 1.0))
    fail("solver.eta_decay", "must lie in (0,1)");
  if (!(p.eta_min > 0.0)) fail("solver.eta_min", "must be positive");
  if (p.max_iter < 1) fail("solver.max_iter", "must be at least 1");
}

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  check_keys(doc, "",
             {"schema_version", "name", "horizon", "weights", "agents",
              "environment", "formation", "solver"});
  if (doc.value("schema_version", 1) != 1)
    fail("schema_version", "unsupported version");

  Scenario s;
  s.name = doc.value("name", "");
  if (!doc.contains("horizon")) fail("horizon", "missing");
  s.horizon = doc["horizon"].get<double>();
  if (doc.contains("weights")) {
    check_keys(doc["weights"], "weights", {"w1", "w2"});
    s.weights.w1 = doc["weights"].value("w1", 1.0);
    s.weights.w2 = doc["weights"].value("w2", 0.0);
  }
  if (!doc.contains("agents")) fail("agents", "missing");
  size_t k = 0;
  for (const json& a : doc["agents"]) {
    s.agents.push_back(parse_agent(a, "agents[" + std::to_string(k) + "]"));
    ++k;
  }
  if (doc.contains("environment")) s.env = parse_environment(doc["environment"]);
  if (doc.contains("formation")) s.formation = parse_formation(doc["formation"]);
  if (doc.contains("solver")) s.solver = parse_solver(doc["solver"]);
  validate_scenario(s);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["schema_version"] = 1;
  doc["name"] = s.name;
  doc["horizon"] = s.horizon;
  doc["weights"] = {{"w1", s.weights.w1}, {"w2", s.weights.w2}};
  doc["agents"] = json::array();
  for (const auto& a : s.agents) {
    json ja;
    ja["model"] = a.model.kind == AgentModel::Kind::Isotropic ? "isotropic"
                                                              : "reeds_shepp";
    ja["start"] = std::vector<double>(a.start.data(), a.start.data() + a.start.size());
    ja["goal"] = std::vector<double>(a.goal.data(), a.goal.data() + a.goal.size());
    if (a.model.kind == AgentModel::Kind::ReedsShepp) {
      ja["V"] = a.model.max_speed;
      ja["W"] = a.model.max_turn_rate;
    }
    if (a.heading_free) ja["heading_free"] = true;
    ja["label"] = a.label;
    doc["agents"].push_back(ja);
  }
  json je;
  switch (s.env.speed.kind) {
    case SpeedField::Kind::Constant:
      je["speed"] = {{"type", "constant"}, {"value", s.env.speed.value}};
      break;
    case SpeedField::Kind::Sinusoidal:
      je["speed"] = {{"type", "sinusoidal"},
                     {"base", s.env.speed.base},
                     {"amplitude", s.env.speed.amplitude}};
      break;
  }
  je["obstacles"] = json::array();
  for (const auto& o : s.env.obstacles) {
    json jo;
    jo["radius"] = o.radius;
    if (o.orbiting) {
      jo["orbit"] = {{"center", {o.orbit_center[0], o.orbit_center[1]}},
                     {"radius", o.orbit_radius},
                     {"angular_rate", o.angular_rate},
                     {"phase", o.phase}};
    } else {
      jo["center"] = {o.center[0], o.center[1]};
    }
    je["obstacles"].push_back(jo);
  }
  je["mask_sharpness"] = s.env.mask_sharpness;
  doc["environment"] = je;
  json jf;
  switch (s.formation.kind) {
    case FormationSpec::Kind::None:
      jf["type"] = "none";
      break;
    case FormationSpec::Kind::PairwiseDistance: {
      jf["type"] = "pairwise";
      jf["pairs"] = json::array();
      for (const auto& pr : s.formation.pairs) {
        jf["pairs"].push_back(
            {{"a", pr.a}, {"b", pr.b}, {"distance", pr.distance}});
      }
      break;
    }
    case FormationSpec::Kind::Square:
      jf["type"] = "square";
      jf["side"] = s.formation.side;
      jf["diagonals"] = {{s.formation.diagonals[0], s.formation.diagonals[1]},
                         {s.formation.diagonals[2], s.formation.diagonals[3]}};
      break;
  }
  doc["formation"] = jf;
  doc["solver"] = {{"sigma", s.solver.sigma},
                   {"tau", s.solver.tau},
                   {"J", s.solver.J},
                   {"eta0", s.solver.eta0},
                   {"eta_decay", s.solver.eta_decay},
                   {"decay_start", s.solver.decay_start},
                   {"decay_every", s.solver.decay_every},
                   {"eta_min", s.solver.eta_min},
                   {"tol", s.solver.tol},
                   {"max_iter", s.solver.max_iter},
                   {"seed", s.solver.seed}};
  return doc.dump(2) + "\n";
}

namespace {

AgentSpec iso_agent(const Vec2& start, const Vec2& goal,
                    const std::string& label) {
  AgentSpec a;
  a.model = AgentModel::isotropic();
  a.start = start;
  a.goal = goal;
  a.label = label;
  return a;
}

AgentSpec car_agent(const Vec2& start, double heading, const Vec2& goal,
                    double V, double W, const std::string& label) {
  AgentSpec a;
  a.model = AgentModel::reeds_shepp(V, W);
  a.start = Vec3(start[0], start[1], heading);
  a.goal = Vec3(goal[0], goal[1], heading);
  a.heading_free = true;
  a.label = label;
  return a;
}

// Equilateral triangle of the given side, centered at c, apex up.
std::array<Vec2, 3> triangle_points(const Vec2& c, double side) {
  const double r = side / std::sqrt(3.0);
  return {Vec2(c[0] - side / 2.0, c[1] - r / 2.0),
          Vec2(c[0], c[1] + r),
          Vec2(c[0] + side / 2.0, c[1] - r / 2.0)};
}

Scenario triangle_base() {
  Scenario s;
  // Bottom-left corner to top-right corner: roughly five length units of
  // travel at unit speed, skirting the central obstacle on the way.
  const auto goals = triangle_points(Vec2(1.5, 1.7), 0.5);
  s.agents = {iso_agent(Vec2(-1.9, -1.9), goals[0], "blue"),
              iso_agent(Vec2(-1.4, -1.9), goals[1], "yellow"),
              iso_agent(Vec2(-0.9, -1.9), goals[2], "purple")};
  s.env.speed = SpeedField::constant(1.0);
  s.env.obstacles = {CircleObstacle::fixed(Vec2(0.0, 0.0), 0.5)};
  s.formation = FormationSpec::pairwise(
      {{0, 1, 0.5}, {0, 2, 0.5}, {1, 2, 0.5}});
  s.horizon = 8.0;
  s.solver.J = 200;
  s.solver.seed = 3;
  return s;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"triangle_time", "triangle_formation", "square_hetero",
          "moving_obstacles"};
}

Scenario builtin(const std::string& name) {
  if (name == "triangle_time") {
    Scenario s = triangle_base();
    s.name = name;
    s.weights = {1.0, 0.5};
    return s;
  }
  if (name == "triangle_formation") {
    Scenario s = triangle_base();
    s.name = name;
    s.weights = {0.5, 4.0};
    return s;
  }
  if (name == "square_hetero") {
    Scenario s;
    s.name = name;
    // Diagonal A-C: the isotropic agents; diagonal B-D: the cars.
    s.agents = {
        iso_agent(Vec2(-0.25, -1.75), Vec2(-0.25, 1.25), "yellow"),
        iso_agent(Vec2(0.25, -1.25), Vec2(0.25, 1.75), "purple"),
        car_agent(Vec2(0.25, -1.75), M_PI / 2.0, Vec2(0.25, 1.25), 1.0, 2.0,
                  "red"),
        car_agent(Vec2(-0.25, -1.25), M_PI / 2.0, Vec2(-0.25, 1.75), 1.0, 2.0,
                  "blue")};
    s.env.speed = SpeedField::constant(1.0);
    s.env.obstacles = {CircleObstacle::fixed(Vec2(-0.8, 0.2), 0.35),
                       CircleObstacle::fixed(Vec2(0.8, -0.2), 0.35)};
    s.formation = FormationSpec::square(0.5, {0, 1, 2, 3});
    s.weights = {1.0, 1.0};
    s.horizon = 6.0;
    s.solver.J = 200;
    s.solver.seed = 1;
    return s;
  }
  if (name == "moving_obstacles") {
    Scenario s;
    s.name = name;
    const auto goals = triangle_points(Vec2(0.0, 0.2), 0.5);
    s.agents = {iso_agent(Vec2(-0.5, -2.0), goals[0], "blue"),
                iso_agent(Vec2(0.0, -2.0), goals[1], "yellow"),
                iso_agent(Vec2(0.5, -2.0), goals[2], "purple")};
    s.env.speed = SpeedField::sinusoidal(1.0, 0.25);
    s.env.obstacles = {
        CircleObstacle::orbit(Vec2(0.0, 0.0), 1.2, 0.6, 0.0, 0.3),
        CircleObstacle::orbit(Vec2(0.0, 0.0), 1.2, 0.6, M_PI, 0.3)};
    s.formation = FormationSpec::pairwise(
        {{0, 1, 0.5}, {0, 2, 0.5}, {1, 2, 0.5}});
    s.weights = {0.5, 3.0};
    s.horizon = 6.0;
    s.solver.seed = 1;
    return s;
  }
  throw ScenarioError("unknown builtin scenario '" + name + "'");
}

}  // namespace hopflax

#include "hopflax/io.hpp"
#include "hopflax/scenario.hpp"
#include "hopflax/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hopflax;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitScenarioError = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitWriteError = 4;

struct RunOptions {
  std::string scenario_path;
  std::string builtin_name;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iter;
  std::vector<double> snapshots;
  bool svg = false;
  bool quiet = false;
};

Scenario load_reference(const std::string& path, const std::string& name) {
  if (!name.empty()) return builtin(name);
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

int max_threads() {
  if (const char* env = std::getenv("HOPFLAX_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::thread::hardware_concurrency());
}

struct RunOutput {
  SolveResult result;
  double goal_cost = 0.0;
  double formation_cost = 0.0;
  double arrival = 0.0;
  double wall_seconds = 0.0;
};

RunOutput execute(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  out.result = solve(scenario);
  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  std::tie(out.goal_cost, out.formation_cost) =
      trajectory_cost(scenario, out.result);
  out.arrival = io::arrival_time(scenario, out.result);
  return out;
}

int cmd_run(const RunOptions& opt) {
  Scenario scenario;
  try {
    scenario = load_reference(opt.scenario_path, opt.builtin_name);
    if (opt.seed) scenario.solver.seed = *opt.seed;
    if (opt.max_iter) scenario.solver.max_iter = *opt.max_iter;
    validate_scenario(scenario);
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitScenarioError;
  }

  const RunOutput run = execute(scenario);
  const SolveResult& result = run.result;

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory '" << opt.out_dir << "'\n";
    return kExitWriteError;
  }
  const fs::path dir(opt.out_dir);
  if (!write_file(dir / "trajectories.csv",
                  io::trajectory_csv(scenario, result)) ||
      !write_file(dir / "summary.json", io::summary_json(scenario, result))) {
    std::cerr << "failed to write outputs to '" << opt.out_dir << "'\n";
    return kExitWriteError;
  }
  if (opt.svg) {
    std::vector<double> times = opt.snapshots;
    if (times.empty()) {
      for (int k = 0; k < 5; ++k) times.push_back(scenario.horizon * k / 4.0);
    }
    for (double t : times) {
      std::ostringstream name;
      name << "snapshot_" << t << ".svg";
      if (!write_file(dir / name.str(),
                      io::svg_snapshot(scenario, result, t))) {
        std::cerr << "failed to write '" << name.str() << "'\n";
        return kExitWriteError;
      }
    }
  }
  if (!opt.quiet) {
    std::cout << "scenario:        " << scenario.name << "\n"
              << "value:           " << result.value << "\n"
              << "iterations:      " << result.iterations
              << (result.converged ? " (converged)" : " (NOT converged)")
              << "\n"
              << "goal cost:       " << run.goal_cost << "\n"
              << "formation cost:  " << run.formation_cost << "\n"
              << "arrival time:    " << run.arrival << "\n"
              << "rollout residual:" << rollout_consistency(scenario, result)
              << "\n"
              << "wall clock:      " << run.wall_seconds << " s\n";
  }
  return result.converged ? kExitOk : kExitNotConverged;
}

// The two scenarios must agree on everything except the weights.
bool same_except_weights(Scenario a, Scenario b) {
  a.weights = b.weights = Weights{};
  a.name = b.name = "";
  return serialize_scenario(a) == serialize_scenario(b);
}

int cmd_compare(const std::vector<std::string>& builtins,
                const std::vector<std::string>& paths,
                const std::string& out_dir,
                std::optional<std::uint64_t> seed, bool quiet) {
  std::vector<Scenario> scenarios;
  try {
    for (const auto& n : builtins) scenarios.push_back(builtin(n));
    for (const auto& p : paths)
      scenarios.push_back(load_reference(p, ""));
    if (scenarios.size() != 2) {
      throw ScenarioError("compare needs exactly two scenario references");
    }
    for (auto& s : scenarios) {
      if (seed) s.solver.seed = *seed;
      validate_scenario(s);
    }
    if (!same_except_weights(scenarios[0], scenarios[1])) {
      throw ScenarioError(
          "compare requires scenarios that differ only in weights");
    }
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitScenarioError;
  }

  RunOutput runs[2];
  if (max_threads() > 1) {
    auto f0 = std::async(std::launch::async,
                         [&] { return execute(scenarios[0]); });
    runs[1] = execute(scenarios[1]);
    runs[0] = f0.get();
  } else {
    runs[0] = execute(scenarios[0]);
    runs[1] = execute(scenarios[1]);
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ostringstream report;
  report << "{\n  \"runs\": [\n";
  for (int k = 0; k < 2; ++k) {
    const auto& s = scenarios[k];
    const auto& r = runs[k];
    report << "    {\"scenario\": \"" << s.name << "\", \"w1\": "
           << s.weights.w1 << ", \"w2\": " << s.weights.w2
           << ", \"value\": " << r.result.value
           << ", \"goal_cost\": " << r.goal_cost
           << ", \"formation_cost\": " << r.formation_cost
           << ", \"arrival_time\": " << r.arrival
           << ", \"converged\": " << (r.result.converged ? "true" : "false")
           << ", \"iterations\": " << r.result.iterations << "}"
           << (k == 0 ? ",\n" : "\n");
  }
  report << "  ]\n}\n";
  if (!write_file(fs::path(out_dir) / "compare.json", report.str())) {
    std::cerr << "failed to write compare report\n";
    return kExitWriteError;
  }
  if (!quiet) std::cout << report.str();
  return (runs[0].result.converged && runs[1].result.converged)
             ? kExitOk
             : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-free multi-agent HJB path planner"};
  app.require_subcommand(1);

  RunOptions opt;
  auto* run = app.add_subcommand("run", "Solve a scenario and write outputs");
  auto* g = run->add_option_group("scenario source");
  g->add_option("--scenario", opt.scenario_path, "Scenario JSON file");
  g->add_option("--builtin", opt.builtin_name,
                "Builtin scenario: triangle_time, triangle_formation, "
                "square_hetero, moving_obstacles");
  g->require_option(1);
  run->add_option("--out", opt.out_dir, "Output directory");
  run->add_option("--seed", opt.seed, "Override the scenario RNG seed");
  run->add_option("--max-iter", opt.max_iter, "Override the iteration cap");
  run->add_option("--snapshots", opt.snapshots,
                  "Physical times for SVG snapshots")
      ->delimiter(',');
  run->add_flag("--svg", opt.svg, "Write SVG snapshots");
  run->add_flag("--quiet", opt.quiet, "Suppress console summary");

  std::vector<std::string> cmp_builtins, cmp_paths;
  std::string cmp_out = "out";
  std::optional<std::uint64_t> cmp_seed;
  bool cmp_quiet = false;
  auto* cmp = app.add_subcommand(
      "compare", "Run two scenarios differing only in weights");
  cmp->add_option("--builtin", cmp_builtins, "Builtin scenario (repeatable)");
  cmp->add_option("--scenario", cmp_paths, "Scenario file (repeatable)");
  cmp->add_option("--out", cmp_out, "Output directory");
  cmp->add_option("--seed", cmp_seed, "Override both RNG seeds");
  cmp->add_flag("--quiet", cmp_quiet, "Suppress console report");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(opt);
  return cmd_compare(cmp_builtins, cmp_paths, cmp_out, cmp_seed, cmp_quiet);
}

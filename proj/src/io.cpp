#include "hopflax/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hopflax {
namespace io {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string num6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double goal_distance(const AgentSpec& agent, const Vec& x) {
  if (agent.heading_free && x.size() == 3) {
    return (x.head<2>() - agent.goal.head<2>()).norm();
  }
  return (x - agent.goal).norm();
}

const char* kPalette[] = {"#1f77b4", "#e6b012", "#9467bd", "#d62728",
                          "#2ca02c", "#8c564b"};

}  // namespace

std::string trajectory_csv(const Scenario& scenario,
                           const SolveResult& result) {
  const int J = static_cast<int>(result.states.front().cols()) - 1;
  std::ostringstream out;
  out << "step,time,agent,x1,x2,x3,p1,p2,p3\n";
  for (int j = 0; j <= J; ++j) {
    const double time = j * result.delta;
    for (size_t i = 0; i < scenario.agents.size(); ++i) {
      const Vec x = result.physical_trajectories[i].col(j);
      const Vec p = result.costates[i].col(J - j);
      out << j << ',' << num(time) << ',' << scenario.agents[i].label;
      for (int k = 0; k < 3; ++k) {
        out << ',';
        if (k < x.size()) out << num(x[k]);
      }
      for (int k = 0; k < 3; ++k) {
        out << ',';
        if (k < p.size()) out << num(p[k]);
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string summary_json(const Scenario& scenario, const SolveResult& result) {
  const auto [goal_cost, formation_cost] = trajectory_cost(scenario, result);
  const double arrival = arrival_time(scenario, result);
  nlohmann::json doc;
  doc["scenario"] = scenario.name;
  doc["value"] = result.value;
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["final_residual"] = result.residual_history.empty()
                              ? 0.0
                              : result.residual_history.back();
  doc["goal_cost"] = goal_cost;
  doc["formation_cost"] = formation_cost;
  doc["rollout_residual"] = rollout_consistency(scenario, result);
  doc["arrival_time"] =
      std::isfinite(arrival) ? nlohmann::json(arrival) : nlohmann::json();
  doc["horizon"] = result.horizon;
  doc["delta"] = result.delta;
  doc["seed"] = scenario.solver.seed;
  return doc.dump(2) + "\n";
}

double arrival_time(const Scenario& scenario, const SolveResult& result,
                    double tol) {
  const int J = static_cast<int>(result.states.front().cols()) - 1;
  int j0 = J + 1;
  for (int j = J; j >= 0; --j) {
    bool all_in = true;
    for (size_t i = 0; i < scenario.agents.size(); ++i) {
      if (goal_distance(scenario.agents[i],
                        result.physical_trajectories[i].col(j)) > tol) {
        all_in = false;
        break;
      }
    }
    if (!all_in) break;
    j0 = j;
  }
  if (j0 > J) return std::numeric_limits<double>::infinity();
  return j0 * result.delta;
}

std::string svg_snapshot(const Scenario& scenario, const SolveResult& result,
                         double time) {
  const int J = static_cast<int>(result.states.front().cols()) - 1;
  const double world = 2.4;  // view half-width
  const double size = 480.0;
  auto px = [&](double x) { return (x + world) / (2.0 * world) * size; };
  auto py = [&](double y) { return (world - y) / (2.0 * world) * size; };
  auto scale = [&](double r) { return r / (2.0 * world) * size; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" "
         "height=\"480\" viewBox=\"0 0 480 480\">\n";
  out << "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";

  // Speed field shading for non-constant fields.
  if (scenario.env.speed.kind == SpeedField::Kind::Sinusoidal) {
    const double lo = scenario.env.speed.base - scenario.env.speed.amplitude;
    const double hi = scenario.env.speed.base + scenario.env.speed.amplitude;
    const int cells = 48;
    const double step = 2.0 * world / cells;
    for (int r = 0; r < cells; ++r) {
      for (int c = 0; c < cells; ++c) {
        const Vec2 center(-world + (c + 0.5) * step,
                          world - (r + 0.5) * step);
        const double v = scenario.env.speed(center);
        const double u =
            hi > lo ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.5;
        // blue (slow) to yellow (fast)
        const int red = static_cast<int>(40 + 215 * u);
        const int green = static_cast<int>(60 + 180 * u);
        const int blue = static_cast<int>(200 - 160 * u);
        out << "<rect x=\"" << num6(c * size / cells) << "\" y=\""
            << num6(r * size / cells) << "\" width=\""
            << num6(size / cells + 0.5) << "\" height=\""
            << num6(size / cells + 0.5) << "\" fill=\"rgb(" << red << ','
            << green << ',' << blue << ")\"/>\n";
      }
    }
  }

  // Obstacles at their positions for this time.
  for (const auto& obs : scenario.env.obstacles) {
    const Vec2 c = obs.center_at(time);
    out << "<circle cx=\"" << num6(px(c[0])) << "\" cy=\"" << num6(py(c[1]))
        << "\" r=\"" << num6(scale(obs.radius)) << "\" fill=\"black\"/>\n";
  }

  // Goals.
  for (size_t i = 0; i < scenario.agents.size(); ++i) {
    const Vec& g = scenario.agents[i].goal;
    out << "<circle cx=\"" << num6(px(g[0])) << "\" cy=\"" << num6(py(g[1]))
        << "\" r=\"5\" fill=\"none\" stroke=\""
        << kPalette[i % 6] << "\" stroke-width=\"1.5\"/>\n";
  }

  // Trailing paths and current positions.
  const int jt = std::clamp(
      static_cast<int>(std::round(time / result.delta)), 0, J);
  for (size_t i = 0; i < scenario.agents.size(); ++i) {
    const auto& traj = result.physical_trajectories[i];
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 6]
        << "\" stroke-width=\"1.5\" points=\"";
    for (int j = 0; j <= jt; ++j) {
      out << num6(px(traj(0, j))) << ',' << num6(py(traj(1, j))) << ' ';
    }
    out << "\"/>\n";
    const Vec x = traj.col(jt);
    out << "<circle cx=\"" << num6(px(x[0])) << "\" cy=\"" << num6(py(x[1]))
        << "\" r=\"5\" fill=\"" << kPalette[i % 6] << "\"/>\n";
    if (x.size() == 3) {  // heading tick for cars
      const double len = 0.18;
      out << "<line x1=\"" << num6(px(x[0])) << "\" y1=\"" << num6(py(x[1]))
          << "\" x2=\"" << num6(px(x[0] + len * std::cos(x[2])))
          << "\" y2=\"" << num6(py(x[1] + len * std::sin(x[2])))
          << "\" stroke=\"" << kPalette[i % 6] << "\" stroke-width=\"2\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace io
}  // namespace hopflax

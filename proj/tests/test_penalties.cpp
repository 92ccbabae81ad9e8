#include "hopflax/oracle.hpp"
#include "hopflax/penalties.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hopflax;

namespace {

FormationSpec triangle_spec() {
  return FormationSpec::pairwise({{0, 1, 0.5}, {0, 2, 0.5}, {1, 2, 0.5}});
}

AgentStates equilateral(double side, const Vec2& center) {
  const double r = side / std::sqrt(3.0);
  return {Vec(Vec2(center[0] - side / 2, center[1] - r / 2)),
          Vec(Vec2(center[0], center[1] + r)),
          Vec(Vec2(center[0] + side / 2, center[1] - r / 2))};
}

}  // namespace

TEST_CASE("chi vanishes at the goals and follows the closed form") {
  AgentStates goals = {Vec(Vec2(1, 2)), Vec(Vec2(-1, 0)), Vec(Vec2(0, 3))};
  CHECK(chi(goals, goals) == doctest::Approx(0.0));

  const double off = std::sqrt(std::log(2.0));
  AgentStates one_state = {Vec(Vec2(off, 0))};
  AgentStates one_goal = {Vec(Vec2(0, 0))};
  CHECK(chi(one_state, one_goal) == doctest::Approx(0.5));

  AgentStates three_states = {Vec(Vec2(off, 0)), Vec(Vec2(0, off)),
                              Vec(Vec2(-off, 0))};
  AgentStates three_goals = {Vec(Vec2(0, 0)), Vec(Vec2(0, 0)), Vec(Vec2(0, 0))};
  CHECK(chi(three_states, three_goals) == doctest::Approx(1.5));
  CHECK(chi(three_states, three_goals) < 3.0);  // bounded by agent count
}

TEST_CASE("chi gradient") {
  CHECK(chi_gradient_single(Vec(Vec2(1, 2)), Vec(Vec2(1, 2))).norm() == 0.0);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Vec2 x(u(rng), u(rng));
    const Vec2 g(u(rng), u(rng));
    const Vec fd = oracle::finite_difference_gradient(
        [&](const Vec& y) {
          return 1.0 - std::exp(-(y - Vec(g)).squaredNorm());
        },
        Vec(x), 1e-5);
    CHECK((chi_gradient_single(Vec(x), Vec(g)) - fd).cwiseAbs().maxCoeff() <
          1e-4);
  }
  // decay at large distance
  CHECK(chi_gradient_single(Vec(Vec2(50, 0)), Vec(Vec2(0, 0))).norm() < 1e-9);
}

TEST_CASE("pairwise rho") {
  const auto spec = triangle_spec();
  CHECK(rho(spec, equilateral(0.5, Vec2(0, 0))) == doctest::Approx(0.0));

  AgentStates coincident = {Vec(Vec2(1, 1)), Vec(Vec2(1, 1)), Vec(Vec2(1, 1))};
  CHECK(rho(spec, coincident) == doctest::Approx(6.0 * 0.25 * 0.25));
}

TEST_CASE("square rho vanishes on a perfect square") {
  const auto spec = FormationSpec::square(1.0, {0, 1, 2, 3});
  // diagonal A-C: (0,0),(1,1); diagonal B-D: (1,0),(0,1)
  AgentStates sq = {Vec(Vec2(0, 0)), Vec(Vec2(1, 1)), Vec(Vec2(1, 0)),
                    Vec(Vec2(0, 1))};
  CHECK(rho(spec, sq) == doctest::Approx(0.0));
  CHECK(rho_gradient_single(spec, sq, 0).norm() == doctest::Approx(0.0));
}

TEST_CASE("rho gradients match finite differences") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto tri = triangle_spec();
  const auto sq = FormationSpec::square(0.5, {0, 2, 1, 3});
  for (int k = 0; k < 100; ++k) {
    AgentStates states;
    for (int i = 0; i < 4; ++i) states.push_back(Vec(Vec2(u(rng), u(rng))));
    for (const auto& spec : {tri, sq}) {
      for (int i = 0; i < (spec.kind == FormationSpec::Kind::Square ? 4 : 3);
           ++i) {
        const Vec fd = oracle::finite_difference_gradient(
            [&](const Vec& y) {
              AgentStates s = states;
              s[i] = y;
              return rho(spec, s);
            },
            states[i], 1e-5);
        CHECK((rho_gradient_single(spec, states, i) - fd)
                  .cwiseAbs()
                  .maxCoeff() < 1e-4);
      }
    }
  }
}

TEST_CASE("pairwise gradients of a symmetric pair are opposite") {
  const auto spec = FormationSpec::pairwise({{0, 1, 0.7}});
  AgentStates states = {Vec(Vec2(-0.3, 0.1)), Vec(Vec2(0.5, -0.2))};
  const Vec g0 = rho_gradient_single(spec, states, 0);
  const Vec g1 = rho_gradient_single(spec, states, 1);
  CHECK((g0 + g1).norm() == doctest::Approx(0.0));
}

TEST_CASE("rho is invariant under rigid motions") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  const auto tri = triangle_spec();
  const auto sq = FormationSpec::square(0.5, {0, 1, 2, 3});
  for (int k = 0; k < 100; ++k) {
    AgentStates states;
    for (int i = 0; i < 4; ++i) states.push_back(Vec(Vec2(u(rng), u(rng))));
    Vec2 centroid = Vec2::Zero();
    for (const auto& s : states) centroid += Vec2(s.head<2>());
    centroid /= 4.0;
    const double a = ang(rng);
    const Vec2 shift(u(rng), u(rng));
    Eigen::Matrix2d R;
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    AgentStates moved;
    for (const auto& s : states) {
      moved.push_back(Vec(Vec2(R * (Vec2(s.head<2>()) - centroid) + centroid +
                               shift)));
    }
    CHECK(rho(tri, moved) == doctest::Approx(rho(tri, states)).epsilon(1e-10));
    CHECK(rho(sq, moved) == doctest::Approx(rho(sq, states)).epsilon(1e-10));
  }
}

TEST_CASE("car heading does not enter rho") {
  const auto spec = triangle_spec();
  AgentStates with_heading = {Vec(Vec3(0, 0, 1.2)), Vec(Vec2(0.5, 0)),
                              Vec(Vec2(0, 0.5))};
  const Vec g = rho_gradient_single(spec, with_heading, 0);
  CHECK(g.size() == 3);
  CHECK(g[2] == 0.0);
}

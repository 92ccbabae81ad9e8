#include "hopflax/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace hopflax;
using oracle::GridSearchSpec;

namespace {

double eikonal(const Vec& p) { return p.norm(); }

}  // namespace

TEST_CASE("classical Hopf-Lax with zero initial data is zero") {
  const Vec x = Vec2(0.7, -0.3);
  const auto r = oracle::classical_hopf_lax(
      eikonal, [](const Vec&) { return 0.0; }, x, 1.0,
      GridSearchSpec{x, 1.5, 0.1}, GridSearchSpec{Vec(Vec2(0, 0)), 2.0, 0.1});
  CHECK(r.feasible);
  CHECK(std::abs(r.value) < 1e-9);
}

TEST_CASE("classical Hopf-Lax with quadratic initial data") {
  auto g = [](const Vec& y) { return y.squaredNorm(); };

  const auto at_origin = oracle::classical_hopf_lax(
      eikonal, g, Vec(Vec2(0, 0)), 1.0, GridSearchSpec{Vec(Vec2(0, 0)), 1.5, 0.1},
      GridSearchSpec{Vec(Vec2(0, 0)), 2.0, 0.1});
  CHECK(at_origin.feasible);
  CHECK(std::abs(at_origin.value) < 1e-9);

  // inf over |x - x*| <= 1 of |x*|^2 with x = (2,0) is 1, at x* = (1,0)
  const auto off = oracle::classical_hopf_lax(
      eikonal, g, Vec(Vec2(2, 0)), 1.0, GridSearchSpec{Vec(Vec2(2, 0)), 2.0, 0.05},
      GridSearchSpec{Vec(Vec2(0, 0)), 3.0, 0.05});
  CHECK(off.feasible);
  CHECK(off.excluded > 0);  // far x* have an unbounded sup
  CHECK(off.value == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("grid refinement is first order") {
  auto g = [](const Vec& y) { return y.squaredNorm(); };
  const Vec x = Vec2(1.95, 0.33);
  const double exact = std::pow(x.norm() - 1.0, 2.0);
  double prev_err = -1.0;
  for (const double h : {0.16, 0.04}) {
    const auto r = oracle::classical_hopf_lax(
        eikonal, g, x, 1.0, GridSearchSpec{x, 2.0, h},
        GridSearchSpec{Vec(Vec2(0, 0)), 3.0, h});
    const double err = std::abs(r.value - exact);
    if (prev_err >= 0.0) CHECK(err <= 0.75 * prev_err + 1e-9);
    prev_err = err;
  }
}

TEST_CASE("prox grid oracle finds a quadratic minimum") {
  const Vec c = Vec2(0.123, -0.456);
  const Vec m = oracle::prox_grid_oracle(
      [&](const Vec& p) { return (p - c).squaredNorm(); },
      GridSearchSpec{Vec(Vec2(0, 0)), 1.0, 0.01});
  CHECK((m - c).cwiseAbs().maxCoeff() <= 0.005 + 1e-12);
}

TEST_CASE("finite differences are exact on affine and quadratic functions") {
  const Vec s = Vec3(1.5, -2.0, 0.25);
  const Vec g_lin = oracle::finite_difference_gradient(
      [&](const Vec& y) { return s.dot(y) + 3.0; }, Vec(Vec3(0.3, 0.1, -0.7)),
      1e-3);
  CHECK((g_lin - s).cwiseAbs().maxCoeff() < 1e-10);

  const Vec x = Vec2(0.4, -1.1);
  const Vec g_quad = oracle::finite_difference_gradient(
      [](const Vec& y) { return y.squaredNorm(); }, x, 1e-4);
  CHECK((g_quad - Vec(2.0 * x)).cwiseAbs().maxCoeff() < 1e-8);
}

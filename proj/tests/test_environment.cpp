#include "hopflax/environment.hpp"
#include "hopflax/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hopflax;

namespace {

Environment one_circle() {
  Environment env;
  env.obstacles = {CircleObstacle::fixed(Vec2(0.0, 0.0), 1.0)};
  return env;
}

}  // namespace

TEST_CASE("signed distance to a static circle") {
  const Environment env = one_circle();
  CHECK(signed_distance(env, Vec2(2.0, 0.0), 0.0) == doctest::Approx(1.0));
  CHECK(signed_distance(env, Vec2(0.0, 0.0), 3.7) == doctest::Approx(-1.0));
}

TEST_CASE("empty obstacle list returns the free-space sentinel") {
  Environment env;
  CHECK(signed_distance(env, Vec2(5.0, -3.0), 0.0) == kFreeSpaceDistance);
  CHECK(obstacle_mask(env, Vec2(5.0, -3.0), 0.0) == doctest::Approx(1.0));
  CHECK(obstacle_mask_gradient(env, Vec2(1.0, 1.0), 0.0).norm() == 0.0);
}

TEST_CASE("mask values on, inside, and outside the boundary") {
  const Environment env = one_circle();
  CHECK(obstacle_mask(env, Vec2(1.0, 0.0), 0.0) == doctest::Approx(0.5));
  CHECK(obstacle_mask(env, Vec2(2.0, 0.0), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(obstacle_mask(env, Vec2(0.0, 0.0), 0.0) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("mask is monotone in signed distance and confined to [0,1]") {
  const Environment env = one_circle();
  double prev = -1.0;
  for (double r = 0.0; r <= 4.0; r += 0.01) {
    const double m = obstacle_mask(env, Vec2(r, 0.0), 0.0);
    // tanh saturates in double precision far from the boundary, so the
    // open-interval bound only holds inside the transition layer
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    CHECK(m >= prev);
    prev = m;
  }
  CHECK(obstacle_mask(env, Vec2(0.95, 0.0), 0.0) > 0.0);
  CHECK(obstacle_mask(env, Vec2(1.05, 0.0), 0.0) < 1.0);
}

TEST_CASE("masked speed") {
  Environment free_env;
  CHECK(masked_speed(free_env, Vec2(0.3, 0.7), 0.0) == doctest::Approx(1.0));

  const Environment env = one_circle();
  CHECK(masked_speed(env, Vec2(0.0, 0.0), 0.0) ==
        doctest::Approx(0.0).epsilon(1e-6));

  Environment sin_env;
  sin_env.speed = SpeedField::sinusoidal(1.0, 0.25);
  CHECK(masked_speed(sin_env, Vec2(M_PI / 2, M_PI / 2), 0.0) ==
        doctest::Approx(1.25));
}

TEST_CASE("masked speed gradient matches finite differences") {
  Environment env;
  env.speed = SpeedField::sinusoidal(1.0, 0.25);
  env.obstacles = {CircleObstacle::fixed(Vec2(0.0, 0.0), 0.6),
                   CircleObstacle::orbit(Vec2(1.0, 0.0), 0.5, 0.7, 0.2, 0.4)};

  CHECK(masked_speed_gradient(Environment{}, Vec2(0.1, 0.2), 0.0).norm() ==
        0.0);
  Environment sin_free;
  sin_free.speed = SpeedField::sinusoidal(1.0, 0.25);
  CHECK(masked_speed_gradient(sin_free, Vec2(0.0, 0.0), 0.0).norm() ==
        doctest::Approx(0.0));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  int tested = 0;
  while (tested < 1000) {
    const Vec2 x(coord(rng), coord(rng));
    const double t = 0.5 * (coord(rng) + 2.0);
    // stay away from the measure-zero equidistance/center set
    double d0 = (x - env.obstacles[0].center_at(t)).norm() -
                env.obstacles[0].radius;
    double d1 = (x - env.obstacles[1].center_at(t)).norm() -
                env.obstacles[1].radius;
    if (std::abs(d0 - d1) < 1e-2) continue;
    if (std::min((x - env.obstacles[0].center_at(t)).norm(),
                 (x - env.obstacles[1].center_at(t)).norm()) < 1e-2)
      continue;
    const Vec fd = oracle::finite_difference_gradient(
        [&](const Vec& y) { return masked_speed(env, Vec2(y[0], y[1]), t); },
        Vec2(x), 1e-5);
    const Vec2 g = masked_speed_gradient(env, x, t);
    CHECK((g - Vec2(fd[0], fd[1])).cwiseAbs().maxCoeff() < 1e-4);
    ++tested;
  }
}

TEST_CASE("moving obstacle equals a static obstacle at the orbit point") {
  Environment moving;
  moving.obstacles = {CircleObstacle::orbit(Vec2(0.5, -0.5), 1.0, 0.9, 0.3, 0.4)};
  const double t = 1.7;
  Environment frozen;
  frozen.obstacles = {
      CircleObstacle::fixed(moving.obstacles[0].center_at(t), 0.4)};
  for (double a = -2.0; a <= 2.0; a += 0.37) {
    const Vec2 x(a, -a + 0.1);
    CHECK(signed_distance(moving, x, t) ==
          doctest::Approx(signed_distance(frozen, x, 0.0)));
  }
}

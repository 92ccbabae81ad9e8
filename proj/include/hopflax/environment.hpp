#pragma once

#include "hopflax/types.hpp"

#include <vector>

namespace hopflax {

/// Local speed of travel over the plane. Either a constant or the
/// separable sinusoidal field base + amplitude*sin(x)*sin(y).
struct SpeedField {
  enum class Kind { Constant, Sinusoidal };

  Kind kind = Kind::Constant;
  double value = 1.0;      // Constant
  double base = 1.0;       // Sinusoidal
  double amplitude = 0.0;  // Sinusoidal, base > amplitude >= 0

  static SpeedField constant(double c);
  static SpeedField sinusoidal(double base, double amplitude);

  double operator()(const Vec2& x) const;
  Vec2 gradient(const Vec2& x) const;
};

/// Circular obstacle whose center is either fixed or orbits a point at
/// constant angular rate.
struct CircleObstacle {
  double radius = 1.0;

  bool orbiting = false;
  Vec2 center = Vec2::Zero();        // used when !orbiting
  Vec2 orbit_center = Vec2::Zero();  // used when orbiting
  double orbit_radius = 0.0;
  double angular_rate = 0.0;
  double phase = 0.0;

  static CircleObstacle fixed(const Vec2& center, double radius);
  static CircleObstacle orbit(const Vec2& orbit_center, double orbit_radius,
                              double angular_rate, double phase, double radius);

  Vec2 center_at(double t) const;
};

struct Environment {
  SpeedField speed;
  std::vector<CircleObstacle> obstacles;
  double mask_sharpness = 100.0;
};

/// Signed distance returned for an empty obstacle list; large enough that
/// the mask saturates to 1 everywhere.
inline constexpr double kFreeSpaceDistance = 1e6;

/// min over obstacles of |x - center(t)| - radius; negative inside.
double signed_distance(const Environment& env, const Vec2& x, double t);

/// Smooth indicator 0.5*(1 + tanh(k*d)); ~0 inside obstacles, ~1 outside.
double obstacle_mask(const Environment& env, const Vec2& x, double t);

/// Spatial gradient of obstacle_mask. Zero where the nearest center
/// coincides with x (the direction is undefined there).
Vec2 obstacle_mask_gradient(const Environment& env, const Vec2& x, double t);

/// speed(x) * obstacle_mask(x, t)
double masked_speed(const Environment& env, const Vec2& x, double t);

/// Analytic gradient of masked_speed.
Vec2 masked_speed_gradient(const Environment& env, const Vec2& x, double t);

}  // namespace hopflax

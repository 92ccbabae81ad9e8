#include "hopflax/environment.hpp"

#include <cmath>
#include <limits>

namespace hopflax {

SpeedField SpeedField::constant(double c) {
  SpeedField f;
  f.kind = Kind::Constant;
  f.value = c;
  return f;
}

SpeedField SpeedField::sinusoidal(double base, double amplitude) {
  SpeedField f;
  f.kind = Kind::Sinusoidal;
  f.base = base;
  f.amplitude = amplitude;
  return f;
}

double SpeedField::operator()(const Vec2& x) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Sinusoidal:
      return base + amplitude * std::sin(x[0]) * std::sin(x[1]);
  }
  return value;
}

Vec2 SpeedField::gradient(const Vec2& x) const {
  switch (kind) {
    case Kind::Constant:
      return Vec2::Zero();
    case Kind::Sinusoidal:
      return Vec2(amplitude * std::cos(x[0]) * std::sin(x[1]),
                  amplitude * std::sin(x[0]) * std::cos(x[1]));
  }
  return Vec2::Zero();
}

CircleObstacle CircleObstacle::fixed(const Vec2& center, double radius) {
  CircleObstacle o;
  o.center = center;
  o.radius = radius;
  return o;
}

CircleObstacle CircleObstacle::orbit(const Vec2& orbit_center,
                                     double orbit_radius, double angular_rate,
                                     double phase, double radius) {
  CircleObstacle o;
  o.orbiting = true;
  o.orbit_center = orbit_center;
  o.orbit_radius = orbit_radius;
  o.angular_rate = angular_rate;
  o.phase = phase;
  o.radius = radius;
  return o;
}

Vec2 CircleObstacle::center_at(double t) const {
  if (!orbiting) return center;
  const double a = angular_rate * t + phase;
  return orbit_center + orbit_radius * Vec2(std::cos(a), std::sin(a));
}

double signed_distance(const Environment& env, const Vec2& x, double t) {
  if (env.obstacles.empty()) return kFreeSpaceDistance;
  double d = std::numeric_limits<double>::infinity();
  for (const auto& obs : env.obstacles) {
    d = std::min(d, (x - obs.center_at(t)).norm() - obs.radius);
  }
  return d;
}

double obstacle_mask(const Environment& env, const Vec2& x, double t) {
  return 0.5 * (1.0 + std::tanh(env.mask_sharpness * signed_distance(env, x, t)));
}

Vec2 obstacle_mask_gradient(const Environment& env, const Vec2& x, double t) {
  if (env.obstacles.empty()) return Vec2::Zero();
  // Ties broken by list order.
  double best = std::numeric_limits<double>::infinity();
  Vec2 dir = Vec2::Zero();
  for (const auto& obs : env.obstacles) {
    const Vec2 r = x - obs.center_at(t);
    const double n = r.norm();
    const double d = n - obs.radius;
    if (d < best) {
      best = d;
      dir = (n > 0.0) ? Vec2(r / n) : Vec2(Vec2::Zero());
    }
  }
  const double th = std::tanh(env.mask_sharpness * best);
  return 0.5 * env.mask_sharpness * (1.0 - th * th) * dir;
}

double masked_speed(const Environment& env, const Vec2& x, double t) {
  return env.speed(x) * obstacle_mask(env, x, t);
}

Vec2 masked_speed_gradient(const Environment& env, const Vec2& x, double t) {
  return env.speed.gradient(x) * obstacle_mask(env, x, t) +
         env.speed(x) * obstacle_mask_gradient(env, x, t);
}

}  // namespace hopflax

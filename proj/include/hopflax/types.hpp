#pragma once

#include <Eigen/Core>

#include <vector>

namespace hopflax {

// Agent states are 2- or 3-dimensional; a small fixed capacity keeps the
// per-step vectors off the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat = Eigen::MatrixXd;

/// Per-agent stacked quantities (one entry per agent, dimensions may differ).
using AgentStates = std::vector<Vec>;

}  // namespace hopflax

#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "hindep/grid.hpp"

namespace hindep {

inline constexpr std::int64_t kDirectionGridCap = 1'000'000;

// Spherical-coordinate transform: m-1 angles to a unit vector in R^m.
// theta[0..m-3] must lie in (-pi/2, pi/2), theta[m-2] in (-pi, pi).
Eigen::VectorXd angles_to_direction(const Eigen::VectorXd& theta);

// Full Cartesian grid of k interior-offset points per angle coordinate,
// mapped through the spherical transform. k^(m-1) rows, one direction each.
Eigen::MatrixXd direction_grid(int m, int k, std::int64_t cap = kDirectionGridCap);

// n_dir directions uniform on the unit sphere of R^m (normalized normals).
Eigen::MatrixXd direction_sample(int m, int n_dir, std::uint64_t seed);

}  // namespace hindep

#include "hindep/directions.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hindep/rng.hpp"

namespace hindep {

Eigen::VectorXd angles_to_direction(const Eigen::VectorXd& theta) {
  const int m = static_cast<int>(theta.size()) + 1;
  if (m < 2) throw parameter_error("need at least one angle");
  const double half_pi = M_PI / 2.0;
  for (int i = 0; i < m - 2; ++i) {
    if (!(theta(i) > -half_pi && theta(i) < half_pi))
      throw parameter_error("polar angle out of (-pi/2, pi/2)");
  }
  if (!(theta(m - 2) > -M_PI && theta(m - 2) < M_PI))
    throw parameter_error("azimuthal angle out of (-pi, pi)");

  Eigen::VectorXd l(m);
  double sin_prod = 1.0;
  for (int kk = 0; kk < m - 1; ++kk) {
    l(kk) = sin_prod * std::cos(theta(kk));
    sin_prod *= std::sin(theta(kk));
  }
  l(m - 1) = sin_prod;
  return l;
}

Eigen::MatrixXd direction_grid(int m, int k, std::int64_t cap) {
  if (m < 2) throw parameter_error("direction dimension must be at least 2");
  if (k < 1) throw parameter_error("grid resolution must be at least 1");
  // Count k^(m-1) with overflow guard.
  std::int64_t count = 1;
  for (int i = 0; i < m - 1; ++i) {
    if (count > cap / k) {
      throw resource_error("direction grid of size " + std::to_string(k) + "^" +
                           std::to_string(m - 1) + " exceeds the cap (" + std::to_string(cap) +
                           "); use sampled directions instead");
    }
    count *= k;
  }
  if (count > cap)
    throw resource_error("direction grid exceeds the cap; use sampled directions instead");

  // Interior offsets keep every angle strictly inside its open interval.
  const auto angle_at = [&](int coord, int j) {
    const double lo = (coord == m - 2) ? -M_PI : -M_PI / 2.0;
    const double hi = -lo;
    return lo + (j + 0.5) * (hi - lo) / k;
  };

  Eigen::MatrixXd dirs(count, m);
  Eigen::VectorXd theta(m - 1);
  std::vector<int> idx(m - 1, 0);
  for (std::int64_t row = 0; row < count; ++row) {
    for (int c = 0; c < m - 1; ++c) theta(c) = angle_at(c, idx[c]);
    dirs.row(row) = angles_to_direction(theta).transpose();
    for (int c = m - 2; c >= 0; --c) {
      if (++idx[c] < k) break;
      idx[c] = 0;
    }
  }
  return dirs;
}

Eigen::MatrixXd direction_sample(int m, int n_dir, std::uint64_t seed) {
  if (m < 2) throw parameter_error("direction dimension must be at least 2");
  if (n_dir < 1) throw parameter_error("need at least one direction");
  Rng rng(seed);
  Eigen::MatrixXd dirs(n_dir, m);
  for (int r = 0; r < n_dir; ++r) {
    double norm_sq;
    do {
      for (int c = 0; c < m; ++c) dirs(r, c) = rng.normal();
      norm_sq = dirs.row(r).squaredNorm();
    } while (norm_sq == 0.0);
    dirs.row(r) /= std::sqrt(norm_sq);
  }
  return dirs;
}

}  // namespace hindep

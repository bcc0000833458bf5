#include "hindep/grid.hpp"

#include <cmath>

namespace hindep {

SampleGrid SampleGrid::uniform(int num_points) {
  if (num_points < 2) throw parameter_error("sample grid needs at least 2 points");
  return SampleGrid{Eigen::VectorXd::LinSpaced(num_points, 0.0, 1.0)};
}

SampleGrid SampleGrid::from_points(Eigen::VectorXd points) {
  const int d = static_cast<int>(points.size());
  if (d < 2) throw parameter_error("sample grid needs at least 2 points");
  if (points(0) != 0.0 || points(d - 1) != 1.0)
    throw parameter_error("sample grid must span [0, 1] inclusive");
  const double delta = 1.0 / (d - 1);
  for (int j = 1; j < d; ++j) {
    const double step = points(j) - points(j - 1);
    if (!(step > 0.0)) throw parameter_error("sample grid points must be strictly increasing");
    if (std::abs(step - delta) > 1e-12 * delta)
      throw parameter_error("sample grid spacing must be uniform");
  }
  return SampleGrid{std::move(points)};
}

bool SampleGrid::same_as(const SampleGrid& other) const {
  return points.size() == other.points.size() && points == other.points;
}

PairedDataset PairedDataset::create(Eigen::MatrixXd x, Eigen::MatrixXd y, SampleGrid grid) {
  if (x.rows() != y.rows())
    throw dimension_error("x and y must hold the same number of curves");
  if (x.rows() < 2) throw parameter_error("paired dataset needs n >= 2");
  if (x.cols() != grid.num_points() || y.cols() != grid.num_points())
    throw dimension_error("curve length must equal the grid size");
  if (!x.allFinite() || !y.allFinite())
    throw parameter_error("curve values must all be finite");
  return PairedDataset{std::move(x), std::move(y), std::move(grid)};
}

}  // namespace hindep

#pragma once

#include <Eigen/Core>

#include "hindep/errors.hpp"

namespace hindep {

// Shared equispaced sampling grid on [0, 1], endpoints included.
struct SampleGrid {
  Eigen::VectorXd points;

  static SampleGrid uniform(int num_points);
  // Validates the invariants (equispaced on [0,1], strictly increasing).
  static SampleGrid from_points(Eigen::VectorXd points);

  int num_points() const { return static_cast<int>(points.size()); }
  double spacing() const { return 1.0 / (points.size() - 1); }
  bool same_as(const SampleGrid& other) const;
};

// A functional sample: rows of x and y are curves observed on `grid`.
struct PairedDataset {
  Eigen::MatrixXd x;  // n x d
  Eigen::MatrixXd y;  // n x d
  SampleGrid grid;

  int n() const { return static_cast<int>(x.rows()); }
  int d() const { return static_cast<int>(x.cols()); }

  static PairedDataset create(Eigen::MatrixXd x, Eigen::MatrixXd y, SampleGrid grid);
};

}  // namespace hindep

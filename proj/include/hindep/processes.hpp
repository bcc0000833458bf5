#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "hindep/grid.hpp"
#include "hindep/rng.hpp"

namespace hindep {

enum class ProcessKind { brownian, fbm, t_process };

struct CovarianceSpec {
  ProcessKind kind = ProcessKind::brownian;
  double hurst = 0.5;  // fbm only
  int df = 3;          // t_process only
  SampleGrid grid;
};

// Covariance of the underlying Gaussian process on the grid. For the
// t-process this is the covariance of the Brownian numerator.
Eigen::MatrixXd covariance_matrix(const CovarianceSpec& spec);

struct CholeskyFactor {
  Eigen::MatrixXd l;
  double jitter = 0.0;  // diagonal shift actually applied
};

// Lower-triangular factor of a symmetric PSD matrix; a small diagonal jitter
// (1e-12 tr(A)/d, doubled up to 1e-8 tr(A)/d) absorbs numerically borderline
// cases such as fractional Brownian covariances on fine grids.
CholeskyFactor cholesky_factor(const Eigen::MatrixXd& a);

Eigen::VectorXd sample_gaussian_path(const Eigen::MatrixXd& factor, Rng& rng);

// The simulated pairs used across the level/power studies:
//   1..3: X = U e^t,  Y = ||X|| * B with B Brownian / fBm(0.25) / fBm(0.75)
//   4..6: X, Y independent, both Brownian / fBm(0.25) / fBm(0.75)
//   7..8: X Brownian, Y = X^2 / exp(X) pointwise
//   9..10: X a t-process with 3 df, Y = X^2 / exp(X) pointwise
PairedDataset example_pair(int id, int n, const SampleGrid& grid, std::uint64_t seed);

// Same marginal laws with X and Y made independent: the randomness feeding Y
// is drawn from streams disjoint from X's. Serves as an exact-null reference.
PairedDataset example_pair_decoupled(int id, int n, const SampleGrid& grid, std::uint64_t seed);

}  // namespace hindep

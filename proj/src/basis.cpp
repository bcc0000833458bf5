#include "hindep/basis.hpp"

#include <cmath>

namespace hindep {

Eigen::VectorXd quadrature_weights(const SampleGrid& grid) {
  const int d = grid.num_points();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(d, grid.spacing());
  w(0) *= 0.5;
  w(d - 1) *= 0.5;
  return w;
}

double inner_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const SampleGrid& grid) {
  if (a.size() != grid.num_points() || b.size() != grid.num_points())
    throw dimension_error("inner product requires curves on the shared grid");
  return (a.array() * b.array() * quadrature_weights(grid).array()).sum();
}

double l2_norm(const Eigen::VectorXd& curve, const SampleGrid& grid) {
  return std::sqrt(inner_product(curve, curve, grid));
}

Eigen::MatrixXd fourier_basis(const SampleGrid& grid, int m) {
  if (m < 2) throw parameter_error("basis order must be at least 2");
  if (m > grid.num_points())
    throw parameter_error("basis order cannot exceed the number of grid points");
  const int d = grid.num_points();
  Eigen::MatrixXd phi(d, m);
  phi.col(0).setOnes();
  const double root2 = std::sqrt(2.0);
  for (int j = 1; j < m; ++j) {
    const int k = (j + 1) / 2;
    const Eigen::ArrayXd arg = 2.0 * M_PI * k * grid.points.array();
    if (j % 2 == 1)
      phi.col(j) = root2 * arg.cos();
    else
      phi.col(j) = root2 * arg.sin();
  }
  return phi;
}

Eigen::VectorXd basis_coefficients(const Eigen::VectorXd& curve, const SampleGrid& grid, int m) {
  if (curve.size() != grid.num_points())
    throw dimension_error("curve length must equal the grid size");
  return fourier_basis(grid, m).transpose() *
         (curve.array() * quadrature_weights(grid).array()).matrix();
}

Eigen::MatrixXd basis_coefficients(const Eigen::MatrixXd& curves, const SampleGrid& grid, int m) {
  if (curves.cols() != grid.num_points())
    throw dimension_error("curve length must equal the grid size");
  const Eigen::VectorXd w = quadrature_weights(grid);
  return (curves * w.asDiagonal()) * fourier_basis(grid, m);
}

double project(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& direction) {
  if (coeffs.size() != direction.size())
    throw dimension_error("projection requires matching coefficient and direction lengths");
  return coeffs.dot(direction);
}

}  // namespace hindep

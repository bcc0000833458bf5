#pragma once

#include <Eigen/Core>

#include "hindep/grid.hpp"

namespace hindep {

// Quadrature weights for integrals over [0,1] on the shared grid
// (trapezoid rule: spacing * (1/2, 1, ..., 1, 1/2)).
Eigen::VectorXd quadrature_weights(const SampleGrid& grid);

// L2([0,1]) inner product of two curves on the same grid.
double inner_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const SampleGrid& grid);

double l2_norm(const Eigen::VectorXd& curve, const SampleGrid& grid);

// First m real Fourier basis functions evaluated on the grid, one per column:
// phi_1 = 1, phi_{2k} = sqrt(2) cos(2 pi k t), phi_{2k+1} = sqrt(2) sin(2 pi k t).
Eigen::MatrixXd fourier_basis(const SampleGrid& grid, int m);

// Coordinates of a curve against the first m basis functions.
Eigen::VectorXd basis_coefficients(const Eigen::VectorXd& curve, const SampleGrid& grid, int m);

// Row-wise version: curves as rows, coefficients as rows of the result (n x m).
Eigen::MatrixXd basis_coefficients(const Eigen::MatrixXd& curves, const SampleGrid& grid, int m);

// Projection score <l, x> in coefficient space.
double project(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& direction);

}  // namespace hindep

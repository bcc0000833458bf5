#pragma once

#include <Eigen/Core>

#include "hindep/errors.hpp"

namespace hindep {

// Only the Epanechnikov kernel ships; the enum leaves room for others.
enum class Kernel1D { epanechnikov };

// Normalization of the bivariate density term inside the statistic:
// `paper` divides the joint sum by n*h^(3/2), `standard` by n*h^2.
enum class Normalization { paper, standard };

// k(u) = (3/4)(1 - u^2) on [-1, 1], 0 elsewhere.
double epanechnikov(double u);
double epanechnikov_derivative(double u);
// Self-convolution (k*k)(v); closed form, support [-2, 2]. Used by LSCV.
double epanechnikov_convolution(double v);

struct KernelConstants {
  double int_k_sq;   // integral of k^2
  double int_m_k;    // integral of m k(m) dm
  double int_k2d_sq; // integral of the product kernel squared
};

KernelConstants kernel_constants(Kernel1D kernel);
// Composite-Simpson evaluation of the same constants; serves as the
// quadrature fallback for future kernels and as an oracle in tests.
KernelConstants kernel_constants_quadrature(Kernel1D kernel, int panels = 100000);

double bandwidth(double c, int n);  // h = c * n^(-1/6)

// (1/(n h)) sum_i k((x_i - s)/h).
double kde_1d(const Eigen::VectorXd& data, double h, double s);
Eigen::VectorXd kde_1d(const Eigen::VectorXd& data, double h, const Eigen::VectorXd& at);

// Estimate of the density derivative f'(s).
double kde_1d_derivative(const Eigen::VectorXd& data, double h, double s);
Eigen::VectorXd kde_1d_derivative(const Eigen::VectorXd& data, double h, const Eigen::VectorXd& at);

// Bivariate product-kernel estimate at (s, t) under the chosen normalization.
double kde_2d(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double h, double s, double t,
              Normalization normalization = Normalization::paper);

struct BandwidthSelection {
  double c = 0.0;
  bool degenerate = false;  // all data equal; fell back to the smallest candidate
};

// 16 log-spaced candidates spanning [0.1, 3] times the sample standard deviation.
Eigen::VectorXd default_c_candidates(const Eigen::VectorXd& data);

// Least-squares cross-validation over bandwidth constants c (h = c n^(-1/6)).
// Ties break toward the smaller candidate. sample_size defaults to data.size()
// and is the n used to map c to h.
BandwidthSelection select_c_lscv(const Eigen::VectorXd& data, const Eigen::VectorXd& candidates,
                                 int sample_size = 0);

}  // namespace hindep

#include "hindep/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hindep {

double epanechnikov(double u) {
  return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

double epanechnikov_derivative(double u) {
  return std::abs(u) <= 1.0 ? -1.5 * u : 0.0;
}

double epanechnikov_convolution(double v) {
  const double w = std::abs(v);
  if (w >= 2.0) return 0.0;
  const double a = 2.0 - w;
  return (3.0 / 160.0) * a * a * a * (w * w + 6.0 * w + 4.0);
}

KernelConstants kernel_constants(Kernel1D kernel) {
  switch (kernel) {
    case Kernel1D::epanechnikov:
      return KernelConstants{3.0 / 5.0, 0.0, 9.0 / 25.0};
  }
  throw parameter_error("unknown kernel");
}

KernelConstants kernel_constants_quadrature(Kernel1D kernel, int panels) {
  if (kernel != Kernel1D::epanechnikov) throw parameter_error("unknown kernel");
  if (panels < 2 || panels % 2 != 0) throw parameter_error("panel count must be even and >= 2");
  const double lo = -1.0, hi = 1.0;
  const double step = (hi - lo) / panels;
  double sum_k_sq = 0.0, sum_m_k = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double u = lo + i * step;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double k = epanechnikov(u);
    sum_k_sq += w * k * k;
    sum_m_k += w * u * k;
  }
  const double int_k_sq = sum_k_sq * step / 3.0;
  const double int_m_k = sum_m_k * step / 3.0;
  // The product kernel factorizes, so the 2d integral is the square.
  return KernelConstants{int_k_sq, int_m_k, int_k_sq * int_k_sq};
}

double bandwidth(double c, int n) {
  if (!(c > 0.0)) throw parameter_error("bandwidth constant must be positive");
  if (n < 1) throw parameter_error("sample size must be positive");
  return c * std::pow(static_cast<double>(n), -1.0 / 6.0);
}

namespace {

void check_kde_args(const Eigen::VectorXd& data, double h) {
  if (!(h > 0.0)) throw parameter_error("bandwidth must be positive");
  if (data.size() == 0) throw parameter_error("density estimate needs data");
}

}  // namespace

double kde_1d(const Eigen::VectorXd& data, double h, double s) {
  check_kde_args(data, h);
  double sum = 0.0;
  for (int i = 0; i < data.size(); ++i) sum += epanechnikov((data(i) - s) / h);
  return sum / (data.size() * h);
}

Eigen::VectorXd kde_1d(const Eigen::VectorXd& data, double h, const Eigen::VectorXd& at) {
  check_kde_args(data, h);
  Eigen::VectorXd out(at.size());
  for (int a = 0; a < at.size(); ++a) out(a) = kde_1d(data, h, at(a));
  return out;
}

double kde_1d_derivative(const Eigen::VectorXd& data, double h, double s) {
  check_kde_args(data, h);
  double sum = 0.0;
  // d/ds k((x-s)/h) = -k'((x-s)/h)/h.
  for (int i = 0; i < data.size(); ++i) sum += epanechnikov_derivative((data(i) - s) / h);
  return -sum / (data.size() * h * h);
}

Eigen::VectorXd kde_1d_derivative(const Eigen::VectorXd& data, double h, const Eigen::VectorXd& at) {
  check_kde_args(data, h);
  Eigen::VectorXd out(at.size());
  for (int a = 0; a < at.size(); ++a) out(a) = kde_1d_derivative(data, h, at(a));
  return out;
}

double kde_2d(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double h, double s, double t,
              Normalization normalization) {
  check_kde_args(x, h);
  if (x.size() != y.size()) throw dimension_error("paired data must have equal lengths");
  double sum = 0.0;
  for (int i = 0; i < x.size(); ++i)
    sum += epanechnikov((x(i) - s) / h) * epanechnikov((y(i) - t) / h);
  const double denom =
      normalization == Normalization::paper ? x.size() * std::pow(h, 1.5) : x.size() * h * h;
  return sum / denom;
}

Eigen::VectorXd default_c_candidates(const Eigen::VectorXd& data) {
  const double mean = data.mean();
  const double var = (data.array() - mean).square().sum() / std::max<int>(1, data.size() - 1);
  const double sd = std::sqrt(var);
  const double scale = sd > 0.0 ? sd : 1.0;
  const int count = 16;
  Eigen::VectorXd c(count);
  const double log_lo = std::log(0.1 * scale);
  const double log_hi = std::log(3.0 * scale);
  for (int i = 0; i < count; ++i)
    c(i) = std::exp(log_lo + (log_hi - log_lo) * i / (count - 1));
  return c;
}

BandwidthSelection select_c_lscv(const Eigen::VectorXd& data, const Eigen::VectorXd& candidates,
                                 int sample_size) {
  const int n = static_cast<int>(data.size());
  if (n < 10) throw parameter_error("cross-validation needs at least 10 data points");
  if (candidates.size() == 0) throw parameter_error("cross-validation needs candidates");
  for (int i = 0; i < candidates.size(); ++i)
    if (!(candidates(i) > 0.0)) throw parameter_error("candidates must be positive");
  if (sample_size <= 0) sample_size = n;

  const double smallest = candidates.minCoeff();
  if ((data.array() == data(0)).all()) return BandwidthSelection{smallest, true};

  double best_c = 0.0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int ci = 0; ci < candidates.size(); ++ci) {
    const double h = bandwidth(candidates(ci), sample_size);
    // LSCV(h) = int fhat^2 - (2/n) sum_i fhat_{-i}(x_i), expanded over pairs.
    double conv_sum = 0.0;  // includes the diagonal (distance 0) terms
    double loo_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      conv_sum += epanechnikov_convolution(0.0);
      for (int j = i + 1; j < n; ++j) {
        const double v = (data(i) - data(j)) / h;
        conv_sum += 2.0 * epanechnikov_convolution(v);
        loo_sum += 2.0 * epanechnikov(v);
      }
    }
    const double integral_sq = conv_sum / (static_cast<double>(n) * n * h);
    const double loo = loo_sum / (static_cast<double>(n) * (n - 1) * h);
    const double score = integral_sq - 2.0 * loo;
    const bool better =
        score < best_score ||
        (score == best_score && candidates(ci) < best_c);
    if (better) {
      best_score = score;
      best_c = candidates(ci);
    }
  }
  return BandwidthSelection{best_c, false};
}

}  // namespace hindep

#include "hindep/processes.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "hindep/basis.hpp"

namespace hindep {

Eigen::MatrixXd covariance_matrix(const CovarianceSpec& spec) {
  const int d = spec.grid.num_points();
  const Eigen::VectorXd& t = spec.grid.points;
  Eigen::MatrixXd cov(d, d);
  switch (spec.kind) {
    case ProcessKind::brownian:
    case ProcessKind::t_process:
      for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) cov(i, j) = cov(j, i) = std::min(t(i), t(j));
      break;
    case ProcessKind::fbm: {
      if (!(spec.hurst > 0.0 && spec.hurst < 1.0))
        throw parameter_error("Hurst index must lie in (0, 1)");
      const double two_h = 2.0 * spec.hurst;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j)
          cov(i, j) = cov(j, i) = 0.5 * (std::pow(t(i), two_h) + std::pow(t(j), two_h) -
                                         std::pow(std::abs(t(i) - t(j)), two_h));
      break;
    }
  }
  return cov;
}

CholeskyFactor cholesky_factor(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw dimension_error("covariance matrix must be square");
  const int d = static_cast<int>(a.rows());
  const double base = a.trace() / d;
  double jitter = 1e-12 * base;
  const double max_jitter = 1e-8 * base;
  for (;;) {
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) return CholeskyFactor{llt.matrixL(), jitter};
    if (jitter <= 0.0 || jitter * 2.0 > max_jitter)
      throw numerical_error("Cholesky factorization failed even with maximum jitter");
    jitter *= 2.0;
  }
}

Eigen::VectorXd sample_gaussian_path(const Eigen::MatrixXd& factor, Rng& rng) {
  Eigen::VectorXd z(factor.cols());
  for (int i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return factor * z;
}

namespace {

constexpr std::uint64_t kRoleMainX = 0;
constexpr std::uint64_t kRoleNoiseY = 1;
constexpr std::uint64_t kRoleChiX = 2;
constexpr std::uint64_t kRoleShadowX = 3;
constexpr std::uint64_t kRoleShadowChi = 4;

Rng sample_stream(std::uint64_t seed, int id, int i, std::uint64_t role) {
  return Rng::stream(seed, {stream_tag::process, static_cast<std::uint64_t>(id),
                            static_cast<std::uint64_t>(i), role});
}

PairedDataset make_example(int id, int n, const SampleGrid& grid, std::uint64_t seed,
                           bool decoupled) {
  if (id < 1 || id > 10) throw parameter_error("unknown example id " + std::to_string(id));
  if (n < 2) throw parameter_error("example datasets need n >= 2");
  const int d = grid.num_points();

  Eigen::MatrixXd x(n, d), y(n, d);
  const Eigen::ArrayXd exp_t = grid.points.array().exp();

  const auto factor_of = [&](ProcessKind kind, double hurst) {
    return cholesky_factor(covariance_matrix(CovarianceSpec{kind, hurst, 3, grid})).l;
  };

  if (id >= 1 && id <= 3) {
    const double hurst = id == 1 ? 0.5 : (id == 2 ? 0.25 : 0.75);
    const Eigen::MatrixXd lb =
        factor_of(id == 1 ? ProcessKind::brownian : ProcessKind::fbm, hurst);
    for (int i = 0; i < n; ++i) {
      const double u = sample_stream(seed, id, i, kRoleMainX).uniform01_halfopen();
      x.row(i) = (u * exp_t).matrix().transpose();
      double norm_x = l2_norm(x.row(i).transpose(), grid);
      if (decoupled) {
        const double u_shadow = sample_stream(seed, id, i, kRoleShadowX).uniform01_halfopen();
        norm_x = l2_norm((u_shadow * exp_t).matrix(), grid);
      }
      Rng noise = sample_stream(seed, id, i, kRoleNoiseY);
      y.row(i) = (norm_x * sample_gaussian_path(lb, noise)).transpose();
    }
  } else if (id >= 4 && id <= 6) {
    const double hurst = id == 4 ? 0.5 : (id == 5 ? 0.25 : 0.75);
    const Eigen::MatrixXd lf =
        factor_of(id == 4 ? ProcessKind::brownian : ProcessKind::fbm, hurst);
    for (int i = 0; i < n; ++i) {
      Rng rx = sample_stream(seed, id, i, kRoleMainX);
      Rng ry = sample_stream(seed, id, i, kRoleNoiseY);
      x.row(i) = sample_gaussian_path(lf, rx).transpose();
      y.row(i) = sample_gaussian_path(lf, ry).transpose();
    }
  } else {
    const bool heavy_tailed = id >= 9;
    const bool square = (id == 7 || id == 9);
    const Eigen::MatrixXd lb = factor_of(ProcessKind::brownian, 0.5);
    const auto draw_x = [&](int i, std::uint64_t path_role, std::uint64_t chi_role) {
      Rng rp = sample_stream(seed, id, i, path_role);
      Eigen::VectorXd path = sample_gaussian_path(lb, rp);
      if (heavy_tailed) {
        Rng rc = sample_stream(seed, id, i, chi_role);
        path /= std::sqrt(rc.chi_squared(3) / 3.0);
      }
      return path;
    };
    for (int i = 0; i < n; ++i) {
      x.row(i) = draw_x(i, kRoleMainX, kRoleChiX).transpose();
      const Eigen::VectorXd source =
          decoupled ? draw_x(i, kRoleShadowX, kRoleShadowChi) : Eigen::VectorXd(x.row(i));
      if (square)
        y.row(i) = source.array().square().matrix().transpose();
      else
        y.row(i) = source.array().exp().matrix().transpose();
    }
  }
  return PairedDataset::create(std::move(x), std::move(y), grid);
}

}  // namespace

PairedDataset example_pair(int id, int n, const SampleGrid& grid, std::uint64_t seed) {
  return make_example(id, n, grid, seed, false);
}

PairedDataset example_pair_decoupled(int id, int n, const SampleGrid& grid, std::uint64_t seed) {
  return make_example(id, n, grid, seed, true);
}

}  // namespace hindep

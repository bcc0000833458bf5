#include "hindep/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hindep/basis.hpp"
#include "hindep/directions.hpp"
#include "hindep/parallel.hpp"
#include "hindep/rng.hpp"

namespace hindep {

EvalGrid EvalGrid::uniform(double g, int l) {
  if (!(g > 0.0)) throw parameter_error("lattice half-width G must be positive");
  if (l < 1) throw parameter_error("lattice resolution L must be at least 1");
  Eigen::VectorXd pts(l + 1);
  for (int i = 0; i <= l; ++i) pts(i) = -g + i * (2.0 * g / l);
  return EvalGrid{g, l, std::move(pts)};
}

EvalGrid EvalGrid::from_points(Eigen::VectorXd points) {
  if (points.size() == 0) throw parameter_error("lattice must contain at least one point");
  const double g = points.cwiseAbs().maxCoeff();
  return EvalGrid{g, static_cast<int>(points.size()) - 1, std::move(points)};
}

void StatisticConfig::validate() const {
  if (m < 2) throw parameter_error("basis truncation M must be at least 2");
  if (!auto_g && !(g > 0.0)) throw parameter_error("G must be positive");
  if (l < 1) throw parameter_error("L must be at least 1");
  if (directions.kind == DirectionStrategy::Kind::sample && directions.n_dir < 1)
    throw parameter_error("need at least one sampled direction");
  if (directions.kind == DirectionStrategy::Kind::grid && directions.k < 1)
    throw parameter_error("grid resolution K must be at least 1");
}

Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd& scores, const Eigen::VectorXd& at, double h) {
  if (!(h > 0.0)) throw parameter_error("bandwidth must be positive");
  Eigen::MatrixXd out(scores.size(), at.size());
  for (int a = 0; a < at.size(); ++a)
    for (int i = 0; i < scores.size(); ++i)
      out(i, a) = epanechnikov((scores(i) - at(a)) / h);
  return out;
}

void standardize_scores(Eigen::MatrixXd& scores) {
  const int n = static_cast<int>(scores.rows());
  if (n < 2) return;
  for (int d = 0; d < scores.cols(); ++d) {
    const double mean = scores.col(d).mean();
    scores.col(d).array() -= mean;
    const double sd = std::sqrt(scores.col(d).squaredNorm() / (n - 1));
    if (sd > 0.0) scores.col(d) /= sd;
  }
}

namespace {

double joint_denominator(int n, double h, Normalization normalization) {
  return normalization == Normalization::paper ? n * std::pow(h, 1.5) : n * h * h;
}

struct PairBest {
  double value = -1.0;
  int dir2 = 0, si = 0, ti = 0;
};

// Max of |J - m1 m2'| over the lattice; row-major scan, strict improvement,
// so the first maximizer in scan order wins.
void surface_max(const Eigen::MatrixXd& joint, const Eigen::VectorXd& m1,
                 const Eigen::VectorXd& m2, double& best, int& si, int& ti) {
  best = -1.0;
  for (int a = 0; a < joint.rows(); ++a) {
    for (int b = 0; b < joint.cols(); ++b) {
      const double v = std::abs(joint(a, b) - m1(a) * m2(b));
      if (v > best) {
        best = v;
        si = a;
        ti = b;
      }
    }
  }
}

}  // namespace

Eigen::MatrixXd discrepancy_surface(const Eigen::VectorXd& px, const Eigen::VectorXd& py, double h,
                                    const EvalGrid& grid, Normalization normalization) {
  if (px.size() != py.size()) throw dimension_error("projected samples must have equal lengths");
  if (px.size() == 0) throw parameter_error("discrepancy surface needs data");
  const int n = static_cast<int>(px.size());
  const Eigen::MatrixXd a = kernel_matrix(px, grid.points, h);
  const Eigen::MatrixXd b = kernel_matrix(py, grid.points, h);
  const Eigen::MatrixXd joint = (a.transpose() * b) / joint_denominator(n, h, normalization);
  const Eigen::VectorXd m1 = a.colwise().sum() / (n * h);
  const Eigen::VectorXd m2 = b.colwise().sum() / (n * h);
  return (joint - m1 * m2.transpose()).cwiseAbs();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> candidate_directions(const DirectionStrategy& strategy,
                                                                 int m) {
  if (strategy.kind == DirectionStrategy::Kind::grid) {
    Eigen::MatrixXd dirs = direction_grid(m, strategy.k);
    return {dirs, dirs};
  }
  return {direction_sample(m, strategy.n_dir, derive_seed(strategy.seed, {stream_tag::directions, 1})),
          direction_sample(m, strategy.n_dir, derive_seed(strategy.seed, {stream_tag::directions, 2}))};
}

StatisticResult t_statistic_with_directions(const PairedDataset& ds, const StatisticConfig& cfg,
                                            const Eigen::MatrixXd& dirs1,
                                            const Eigen::MatrixXd& dirs2) {
  cfg.validate();
  if (dirs1.cols() != cfg.m || dirs2.cols() != cfg.m)
    throw dimension_error("direction dimension must equal the basis truncation M");

  const int n = ds.n();
  const int n1 = static_cast<int>(dirs1.rows());
  const int n2 = static_cast<int>(dirs2.rows());

  Eigen::MatrixXd px = basis_coefficients(ds.x, ds.grid, cfg.m) * dirs1.transpose();  // n x n1
  Eigen::MatrixXd py = basis_coefficients(ds.y, ds.grid, cfg.m) * dirs2.transpose();  // n x n2
  standardize_scores(px);
  standardize_scores(py);

  double c = cfg.bandwidth_c;
  if (!(c > 0.0)) {
    const auto select = [&](const Eigen::MatrixXd& scores) {
      const int probes = std::min<int>(8, static_cast<int>(scores.cols()));
      const Eigen::VectorXd pooled = scores.leftCols(probes).reshaped();
      return select_c_lscv(pooled, default_c_candidates(pooled), n).c;
    };
    c = std::sqrt(select(px) * select(py));
  }
  const double h = bandwidth(c, n);

  double g = cfg.g;
  if (cfg.auto_g) g = std::max(px.cwiseAbs().maxCoeff(), py.cwiseAbs().maxCoeff()) + h;
  const EvalGrid grid = EvalGrid::uniform(g, cfg.l);
  const int np = grid.size();

  // Kernel matrices for every candidate direction; the y side is stacked so
  // one product per x-direction covers all pairs.
  std::vector<Eigen::MatrixXd> ax(n1);
  Eigen::MatrixXd by(n, static_cast<std::int64_t>(np) * n2);
  Eigen::MatrixXd m1(np, n1), m2(np, n2);
  for (int d = 0; d < n1; ++d) {
    ax[d] = kernel_matrix(px.col(d), grid.points, h);
    m1.col(d) = ax[d].colwise().sum() / (n * h);
  }
  for (int e = 0; e < n2; ++e) {
    by.middleCols(static_cast<std::int64_t>(e) * np, np) = kernel_matrix(py.col(e), grid.points, h);
    m2.col(e) = by.middleCols(static_cast<std::int64_t>(e) * np, np).colwise().sum() / (n * h);
  }

  const double denom = joint_denominator(n, h, cfg.normalization);
  std::vector<PairBest> row_best(n1);
  parallel_for(0, n1, cfg.threads, [&](int d) {
    const Eigen::MatrixXd joint_all = ax[d].transpose() * by / denom;  // np x (np*n2)
    PairBest best;
    for (int e = 0; e < n2; ++e) {
      double v;
      int si, ti;
      surface_max(joint_all.middleCols(static_cast<std::int64_t>(e) * np, np), m1.col(d),
                  m2.col(e), v, si, ti);
      if (v > best.value) best = PairBest{v, e, si, ti};
    }
    row_best[d] = best;
  });

  // Order-fixed reduction over x-direction index.
  int arg1 = 0;
  for (int d = 1; d < n1; ++d)
    if (row_best[d].value > row_best[arg1].value) arg1 = d;
  const PairBest& win = row_best[arg1];

  StatisticResult res;
  res.t_value = std::max(win.value, 0.0);
  res.h = h;
  res.bandwidth_c = c;
  res.normalized = std::sqrt(n * h) * res.t_value;
  res.g_used = g;
  res.argmax = Argmax{arg1,
                      win.dir2,
                      win.si,
                      win.ti,
                      grid.points(win.si),
                      grid.points(win.ti),
                      dirs1.row(arg1).transpose(),
                      dirs2.row(win.dir2).transpose()};
  return res;
}

StatisticResult t_statistic(const PairedDataset& ds, const StatisticConfig& cfg) {
  cfg.validate();
  const auto [dirs1, dirs2] = candidate_directions(cfg.directions, cfg.m);
  return t_statistic_with_directions(ds, cfg, dirs1, dirs2);
}

double resolve_bandwidth_c(const PairedDataset& ds, const StatisticConfig& cfg) {
  if (cfg.bandwidth_c > 0.0) return cfg.bandwidth_c;
  const auto [dirs1, dirs2] = candidate_directions(cfg.directions, cfg.m);
  return resolve_bandwidth_c(ds, cfg, dirs1, dirs2);
}

double resolve_bandwidth_c(const PairedDataset& ds, const StatisticConfig& cfg,
                           const Eigen::MatrixXd& dirs1, const Eigen::MatrixXd& dirs2) {
  if (cfg.bandwidth_c > 0.0) return cfg.bandwidth_c;
  const int probes1 = std::min<int>(8, static_cast<int>(dirs1.rows()));
  const int probes2 = std::min<int>(8, static_cast<int>(dirs2.rows()));

  Eigen::MatrixXd px = basis_coefficients(ds.x, ds.grid, cfg.m) * dirs1.topRows(probes1).transpose();
  Eigen::MatrixXd py = basis_coefficients(ds.y, ds.grid, cfg.m) * dirs2.topRows(probes2).transpose();
  standardize_scores(px);
  standardize_scores(py);

  const auto select = [&](const Eigen::MatrixXd& scores) {
    const Eigen::VectorXd pooled = scores.reshaped();
    return select_c_lscv(pooled, default_c_candidates(pooled), ds.n()).c;
  };
  return std::sqrt(select(px) * select(py));
}

}  // namespace hindep

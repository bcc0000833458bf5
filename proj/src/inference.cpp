#include "hindep/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hindep/basis.hpp"
#include "hindep/parallel.hpp"
#include "hindep/processes.hpp"
#include "hindep/rng.hpp"

namespace hindep {

double null_mean(double f1, double f1_deriv, double f2, double f2_deriv, double sqrt_c,
                 const KernelConstants& kc) {
  return -sqrt_c * (f1 * f2_deriv * kc.int_m_k + f2 * f1_deriv * kc.int_m_k);
}

double null_variance(double f12, double f1, double f2, const KernelConstants& kc) {
  return f12 * kc.int_k2d_sq + f1 * f1 * f2 * kc.int_k_sq + f1 * f2 * f2 * kc.int_k_sq;
}

NullModel fit_null_model(const PairedDataset& reference, const StatisticConfig& cfg) {
  StatisticConfig resolved = cfg;
  resolved.bandwidth_c = resolve_bandwidth_c(reference, cfg);
  const StatisticResult res = t_statistic(reference, resolved);
  return fit_null_model(reference, resolved, res.argmax.direction_x, res.argmax.direction_y);
}

NullModel fit_null_model(const PairedDataset& reference, const StatisticConfig& cfg,
                         const Eigen::VectorXd& l1, const Eigen::VectorXd& l2) {
  cfg.validate();
  const int n = reference.n();
  const double c = resolve_bandwidth_c(reference, cfg);
  const double h = bandwidth(c, n);

  // Same studentized scores the statistic itself works on.
  Eigen::MatrixXd px_col = basis_coefficients(reference.x, reference.grid, cfg.m) * l1;
  Eigen::MatrixXd py_col = basis_coefficients(reference.y, reference.grid, cfg.m) * l2;
  standardize_scores(px_col);
  standardize_scores(py_col);
  const Eigen::VectorXd px = px_col;
  const Eigen::VectorXd py = py_col;

  double g = cfg.g;
  if (cfg.auto_g) g = std::max(px.cwiseAbs().maxCoeff(), py.cwiseAbs().maxCoeff()) + h;
  const EvalGrid lattice = EvalGrid::uniform(g, cfg.l);
  if (lattice.size() == 0) throw parameter_error("evaluation lattice is empty");

  NullModel nm;
  nm.lattice = lattice;
  nm.n = n;
  nm.h = h;
  nm.c_limit = n * h * h;
  nm.direction_x = l1;
  nm.direction_y = l2;
  nm.f1 = kde_1d(px, h, lattice.points);
  nm.f2 = kde_1d(py, h, lattice.points);
  nm.f1_deriv = kde_1d_derivative(px, h, lattice.points);
  nm.f2_deriv = kde_1d_derivative(py, h, lattice.points);
  nm.f12 = nm.f1 * nm.f2.transpose();

  const KernelConstants kc = kernel_constants(Kernel1D::epanechnikov);
  const double sqrt_c = std::sqrt(nm.c_limit);
  const int np = lattice.size();
  nm.mean.resize(np, np);
  nm.var.resize(np, np);
  for (int a = 0; a < np; ++a) {
    for (int b = 0; b < np; ++b) {
      nm.mean(a, b) = null_mean(nm.f1(a), nm.f1_deriv(a), nm.f2(b), nm.f2_deriv(b), sqrt_c, kc);
      nm.var(a, b) = null_variance(nm.f12(a, b), nm.f1(a), nm.f2(b), kc);
    }
  }
  return nm;
}

SupNullDistribution sample_sup_distribution(const NullModel& nm, int reps, std::uint64_t seed,
                                            int threads) {
  if (reps < 100) throw parameter_error("sup-distribution sampling needs at least 100 draws");
  const Eigen::MatrixXd sd = nm.var.cwiseSqrt();
  const int np = static_cast<int>(sd.rows());

  Eigen::VectorXd samples(reps);
  constexpr int kChunk = 1024;
  const int chunks = (reps + kChunk - 1) / kChunk;
  parallel_for(0, chunks, threads, [&](int chunk) {
    Rng rng = Rng::stream(seed, {stream_tag::sup_sampling, static_cast<std::uint64_t>(chunk)});
    const int lo = chunk * kChunk;
    const int hi = std::min(reps, lo + kChunk);
    for (int r = lo; r < hi; ++r) {
      double sup = 0.0;
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b)
          sup = std::max(sup, std::abs(nm.mean(a, b) + sd(a, b) * rng.normal()));
      samples(r) = sup;
    }
  });
  std::sort(samples.begin(), samples.end());
  return SupNullDistribution{std::move(samples), reps};
}

namespace {

double quantile_upper(const double* sorted, int count, double alpha) {
  if (alpha <= 0.0) return std::numeric_limits<double>::infinity();
  if (alpha >= 1.0) throw parameter_error("alpha must be below 1");
  int rank = static_cast<int>(std::ceil((1.0 - alpha) * count));
  rank = std::clamp(rank, 1, count);
  return sorted[rank - 1];
}

}  // namespace

double critical_value(const SupNullDistribution& snd, double alpha) {
  if (snd.reps == 0) throw parameter_error("empty sup distribution");
  return quantile_upper(snd.samples.data(), snd.reps, alpha);
}

double empirical_critical_value(std::vector<double> stats, double alpha) {
  if (stats.empty()) throw parameter_error("empty sample");
  std::sort(stats.begin(), stats.end());
  return quantile_upper(stats.data(), static_cast<int>(stats.size()), alpha);
}

double asymptotic_power(const SupNullDistribution& snd, double c_alpha, double lambda) {
  if (lambda < 0.0) throw parameter_error("lambda must be nonnegative");
  int count = 0;
  for (int i = 0; i < snd.samples.size(); ++i)
    if (snd.samples(i) + lambda > c_alpha) ++count;
  return static_cast<double>(count) / snd.reps;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<int>(idx.size()), m.cols());
  for (int i = 0; i < static_cast<int>(idx.size()); ++i) out.row(i) = m.row(idx[i]);
  return out;
}

std::vector<int> resample_indices(Rng& rng, int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = rng.uniform_int(n);
  return idx;
}

TestReport resampling_pvalue(const PairedDataset& ds, int b, const StatisticConfig& cfg,
                             std::uint64_t seed, double alpha, bool permute) {
  if (b < 1) throw parameter_error("need at least one resample");
  StatisticConfig resolved = cfg;
  resolved.bandwidth_c = resolve_bandwidth_c(ds, cfg);
  StatisticConfig inner = resolved;
  inner.threads = 1;

  const StatisticResult base = t_statistic(ds, resolved);
  const int n = ds.n();

  std::vector<double> t(b);
  parallel_for(0, b, cfg.threads, [&](int j) {
    const std::uint64_t tag = permute ? stream_tag::permutation : stream_tag::bootstrap;
    Rng rng = Rng::stream(seed, {tag, static_cast<std::uint64_t>(j)});
    PairedDataset replica = ds;
    if (permute) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
      replica.y = take_rows(ds.y, perm);
    } else {
      const std::vector<int> idx = resample_indices(rng, n);
      replica.x = take_rows(ds.x, idx);
      replica.y = take_rows(ds.y, idx);
    }
    t[j] = t_statistic(replica, inner).t_value;
  });

  int exceed = 0;
  for (double tj : t)
    if (tj > base.t_value) ++exceed;

  TestReport report;
  report.t_value = base.t_value;
  report.normalized = base.normalized;
  report.h = base.h;
  report.bandwidth_c = resolved.bandwidth_c;
  report.p_value = static_cast<double>(exceed) / b;
  report.critical_value = empirical_critical_value(t, alpha);
  report.alpha = alpha;
  report.method = permute ? "permutation" : "bootstrap";
  report.b = b;
  report.seed = seed;
  return report;
}

}  // namespace

TestReport bootstrap_pvalue(const PairedDataset& ds, int b, const StatisticConfig& cfg,
                            std::uint64_t seed, double alpha) {
  return resampling_pvalue(ds, b, cfg, seed, alpha, false);
}

TestReport permutation_pvalue(const PairedDataset& ds, int b, const StatisticConfig& cfg,
                              std::uint64_t seed, double alpha) {
  return resampling_pvalue(ds, b, cfg, seed, alpha, true);
}

namespace {

MonteCarloResult mc_rejection_rate(int example_id, int n, const SampleGrid& grid, double alpha,
                                   int reps, const StatisticConfig& cfg, std::uint64_t seed,
                                   int calib_reps) {
  if (reps < 100) throw parameter_error("Monte-Carlo estimate needs at least 100 replicates");
  if (calib_reps < 100) throw parameter_error("calibration needs at least 100 replicates");

  // One bandwidth constant for the whole run, selected on independent
  // Brownian pilots: the calibrated critical value is only transferable to
  // the test replicates when both sides share the same smoothing scale.
  // Averaging over a few pilots damps the selection noise of a single draw.
  StatisticConfig inner = cfg;
  inner.threads = 1;
  if (!(inner.bandwidth_c > 0.0)) {
    constexpr int kPilots = 4;
    double log_c = 0.0;
    for (int p = 0; p < kPilots; ++p) {
      const PairedDataset pilot =
          example_pair(4, n, grid,
                       derive_seed(seed, {stream_tag::pilot, static_cast<std::uint64_t>(p)}));
      log_c += std::log(resolve_bandwidth_c(pilot, cfg));
    }
    inner.bandwidth_c = std::exp(log_c / kPilots);
  }

  // Critical value from independent-Brownian replicates (example 4 is that law).
  std::vector<double> calib(calib_reps);
  parallel_for(0, calib_reps, cfg.threads, [&](int r) {
    const PairedDataset ds =
        example_pair(4, n, grid, derive_seed(seed, {stream_tag::mc_calibration,
                                                    static_cast<std::uint64_t>(r)}));
    calib[r] = t_statistic(ds, inner).t_value;
  });
  const double c_hat = empirical_critical_value(calib, alpha);

  std::vector<unsigned char> reject(reps, 0);
  parallel_for(0, reps, cfg.threads, [&](int r) {
    const PairedDataset ds =
        example_pair(example_id, n, grid,
                     derive_seed(seed, {stream_tag::mc_replicate, static_cast<std::uint64_t>(r)}));
    reject[r] = t_statistic(ds, inner).t_value > c_hat ? 1 : 0;
  });
  const int total = std::accumulate(reject.begin(), reject.end(), 0);
  return MonteCarloResult{static_cast<double>(total) / reps, c_hat, inner.bandwidth_c};
}

}  // namespace

MonteCarloResult mc_level(int example_id, int n, const SampleGrid& grid, double alpha, int reps,
                          const StatisticConfig& cfg, std::uint64_t seed, int calib_reps) {
  if (example_id < 4 || example_id > 6)
    throw parameter_error("level estimation uses the independent examples 4..6");
  return mc_rejection_rate(example_id, n, grid, alpha, reps, cfg, seed, calib_reps);
}

MonteCarloResult mc_power(int example_id, int n, const SampleGrid& grid, double alpha, int reps,
                          const StatisticConfig& cfg, std::uint64_t seed, int calib_reps) {
  const bool dependent = (example_id >= 1 && example_id <= 3) || (example_id >= 7 && example_id <= 10);
  if (!dependent) throw parameter_error("power estimation uses the dependent examples 1..3, 7..10");
  return mc_rejection_rate(example_id, n, grid, alpha, reps, cfg, seed, calib_reps);
}

MixSplitResult mix_split_size_power(const PairedDataset& ds, double alpha, int m1, int m2,
                                    const StatisticConfig& cfg, std::uint64_t seed) {
  if (m1 < 100 || m2 < 100) throw parameter_error("mix-and-split needs at least 100 resamples");
  StatisticConfig resolved = cfg;
  resolved.bandwidth_c = resolve_bandwidth_c(ds, cfg);
  StatisticConfig inner = resolved;
  inner.threads = 1;

  const int n = ds.n();
  const int d = ds.d();

  // Pool and shuffle all curves; the two halves are independent samples.
  Eigen::MatrixXd pool(2 * n, d);
  pool.topRows(n) = ds.x;
  pool.bottomRows(n) = ds.y;
  Rng shuffle_rng = Rng::stream(seed, {stream_tag::mix_split, 0});
  std::vector<int> order(2 * n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
    std::swap(order[i], order[shuffle_rng.uniform_int(i + 1)]);
  bool dropped = false;
  if (order.size() % 2 != 0) {  // cannot happen with paired input; kept for safety
    order.erase(order.begin() + shuffle_rng.uniform_int(static_cast<int>(order.size())));
    dropped = true;
  }
  const int half = static_cast<int>(order.size()) / 2;
  Eigen::MatrixXd z1(half, d), z2(half, d);
  for (int i = 0; i < half; ++i) {
    z1.row(i) = pool.row(order[i]);
    z2.row(i) = pool.row(order[half + i]);
  }

  const auto independent_resample_t = [&](std::uint64_t phase, int r) {
    Rng r1 = Rng::stream(seed, {stream_tag::mix_split, phase, static_cast<std::uint64_t>(r)});
    Rng r2 = Rng::stream(seed, {stream_tag::mix_split, phase + 1, static_cast<std::uint64_t>(r)});
    const PairedDataset replica = PairedDataset::create(
        take_rows(z1, resample_indices(r1, half)), take_rows(z2, resample_indices(r2, half)),
        ds.grid);
    return t_statistic(replica, inner).t_value;
  };

  std::vector<double> calib(m1);
  parallel_for(0, m1, cfg.threads, [&](int r) { calib[r] = independent_resample_t(1, r); });
  const double c_hat = empirical_critical_value(calib, alpha);

  std::vector<unsigned char> reject_size(m1, 0);
  parallel_for(0, m1, cfg.threads, [&](int r) {
    reject_size[r] = independent_resample_t(3, r) > c_hat ? 1 : 0;
  });

  std::vector<unsigned char> reject_power(m2, 0);
  parallel_for(0, m2, cfg.threads, [&](int r) {
    Rng rng = Rng::stream(seed, {stream_tag::mix_split, 5, static_cast<std::uint64_t>(r)});
    const std::vector<int> idx = resample_indices(rng, n);
    const PairedDataset replica =
        PairedDataset::create(take_rows(ds.x, idx), take_rows(ds.y, idx), ds.grid);
    reject_power[r] = t_statistic(replica, inner).t_value > c_hat ? 1 : 0;
  });

  MixSplitResult out;
  out.size = static_cast<double>(std::accumulate(reject_size.begin(), reject_size.end(), 0)) / m1;
  out.power =
      static_cast<double>(std::accumulate(reject_power.begin(), reject_power.end(), 0)) / m2;
  out.critical_value = c_hat;
  out.bandwidth_c = resolved.bandwidth_c;
  out.dropped_one = dropped;
  return out;
}

}  // namespace hindep

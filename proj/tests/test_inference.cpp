#include <cmath>

#include <doctest.h>

#include "hindep/inference.hpp"
#include "hindep/processes.hpp"

using namespace hindep;

namespace {

StatisticConfig tiny_config() {
  StatisticConfig cfg;
  cfg.m = 4;
  cfg.directions = DirectionStrategy::sample(6, 3);
  cfg.auto_g = true;
  cfg.l = 8;
  cfg.bandwidth_c = 1.0;
  cfg.threads = 1;
  return cfg;
}

// A hand-built model over an explicit lattice.
NullModel manual_model(const Eigen::MatrixXd& mean, const Eigen::MatrixXd& var) {
  NullModel nm;
  nm.lattice = EvalGrid::from_points(Eigen::VectorXd::LinSpaced(mean.rows(), -1.0, 1.0));
  nm.mean = mean;
  nm.var = var;
  nm.h = 0.5;
  nm.c_limit = 1.0;
  nm.n = 100;
  return nm;
}

double normal_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("limit variance composes the kernel constants") {
  const KernelConstants kc = kernel_constants(Kernel1D::epanechnikov);
  CHECK(null_variance(1.0, 1.0, 1.0, kc) == doctest::Approx(1.56).epsilon(1e-14));
  CHECK(null_variance(0.0, 0.0, 0.0, kc) == 0.0);
}

TEST_CASE("limit mean vanishes for symmetric kernels") {
  const KernelConstants kc = kernel_constants(Kernel1D::epanechnikov);
  CHECK(null_mean(0.8, 0.3, 0.9, -0.2, 2.0, kc) == 0.0);
}

TEST_CASE("fitted model has zero mean and nonnegative variance") {
  const PairedDataset ref = example_pair(4, 40, SampleGrid::uniform(41), 19);
  const NullModel nm = fit_null_model(ref, tiny_config());
  CHECK(nm.mean.cwiseAbs().maxCoeff() == 0.0);
  CHECK(nm.var.minCoeff() >= 0.0);
  CHECK(nm.c_limit == doctest::Approx(ref.n() * nm.h * nm.h));
  // Variance must vanish wherever all densities vanish: the lattice corner is
  // far outside the projected data range under auto G.
  CHECK(nm.var(0, 0) == 0.0);
  CHECK(nm.f12.rows() == nm.lattice.size());
}

TEST_CASE("fixed-direction fit matches the argmax-direction fit shape") {
  const PairedDataset ref = example_pair(4, 30, SampleGrid::uniform(31), 7);
  const StatisticConfig cfg = tiny_config();
  Eigen::VectorXd l1 = Eigen::VectorXd::Zero(cfg.m);
  Eigen::VectorXd l2 = Eigen::VectorXd::Zero(cfg.m);
  l1(0) = 1.0;
  l2(1) = 1.0;
  const NullModel nm = fit_null_model(ref, cfg, l1, l2);
  CHECK(nm.direction_x == l1);
  CHECK(nm.direction_y == l2);
  CHECK(nm.var.rows() == cfg.l + 1);
  CHECK(nm.var.cols() == cfg.l + 1);
}

TEST_CASE("sup draws from a unit normal reproduce the Gaussian tail") {
  const NullModel nm = manual_model(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Ones(1, 1));
  const SupNullDistribution snd = sample_sup_distribution(nm, 200000, 42);
  CHECK(snd.samples.minCoeff() >= 0.0);
  CHECK(std::is_sorted(snd.samples.begin(), snd.samples.end()));
  int above = 0;
  for (int i = 0; i < snd.samples.size(); ++i)
    if (snd.samples(i) > 1.96) ++above;
  const double frac = static_cast<double>(above) / snd.reps;
  CHECK(std::abs(frac - 2.0 * normal_tail(1.96)) < 0.004);
}

TEST_CASE("zero variance collapses the draws to |mean|") {
  Eigen::MatrixXd mean(2, 2);
  mean << 0.5, -1.5, 0.0, 0.25;
  const NullModel nm = manual_model(mean, Eigen::MatrixXd::Zero(2, 2));
  const SupNullDistribution snd = sample_sup_distribution(nm, 500, 1);
  for (int i = 0; i < snd.samples.size(); ++i) CHECK(snd.samples(i) == 1.5);
}

TEST_CASE("adding independent lattice points stochastically dominates") {
  const NullModel one = manual_model(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Ones(1, 1));
  const NullModel four = manual_model(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Ones(2, 2));
  const SupNullDistribution s1 = sample_sup_distribution(one, 100000, 5);
  const SupNullDistribution s4 = sample_sup_distribution(four, 100000, 5);
  CHECK(critical_value(s4, 0.05) >= critical_value(s1, 0.05));
  CHECK(critical_value(s4, 0.5) >= critical_value(s1, 0.5));
}

TEST_CASE("sampling is deterministic and thread independent") {
  const NullModel nm = manual_model(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Ones(2, 2));
  const SupNullDistribution a = sample_sup_distribution(nm, 5000, 9, 1);
  const SupNullDistribution b = sample_sup_distribution(nm, 5000, 9, 4);
  CHECK(a.samples == b.samples);
}

TEST_CASE("critical value follows the higher quantile rule") {
  SupNullDistribution snd;
  snd.samples = Eigen::VectorXd::LinSpaced(100, 0.01, 1.0);
  snd.reps = 100;
  CHECK(critical_value(snd, 0.05) == doctest::Approx(0.95));
  CHECK(critical_value(snd, 0.10) <= critical_value(snd, 0.05));
  CHECK(critical_value(snd, 0.0) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(critical_value(snd, 1.0), parameter_error);

  snd.samples = Eigen::VectorXd::Constant(50, 2.5);
  snd.reps = 50;
  for (double alpha : {0.01, 0.05, 0.5, 0.99}) CHECK(critical_value(snd, alpha) == 2.5);
}

TEST_CASE("empirical critical value agrees with the sup-distribution rule") {
  std::vector<double> stats{5.0, 1.0, 3.0, 2.0, 4.0};
  CHECK(empirical_critical_value(stats, 0.2) == 4.0);
  CHECK(empirical_critical_value(stats, 0.5) == 3.0);
}

TEST_CASE("asymptotic power endpoints") {
  const NullModel nm = manual_model(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Ones(1, 1));
  const SupNullDistribution snd = sample_sup_distribution(nm, 100000, 3);
  const double c_alpha = critical_value(snd, 0.05);
  // At lambda = 0 the fraction above the quantile is alpha up to ties.
  CHECK(asymptotic_power(snd, c_alpha, 0.0) == doctest::Approx(0.05).epsilon(0.02));
  CHECK(asymptotic_power(snd, c_alpha, c_alpha + 1e-9) == 1.0);
  double previous = 0.0;
  for (double lambda = 0.0; lambda <= 3.0; lambda += 0.5) {
    const double p = asymptotic_power(snd, c_alpha, lambda);
    CHECK(p >= previous);
    previous = p;
  }
  CHECK_THROWS_AS(asymptotic_power(snd, c_alpha, -1.0), parameter_error);
}

TEST_CASE("bootstrap p-value is zero when every resample repeats the data") {
  // All rows identical: any index resample reproduces the dataset exactly.
  const SampleGrid grid = SampleGrid::uniform(21);
  const PairedDataset seeded = example_pair(4, 2, grid, 6);
  Eigen::MatrixXd x(5, 21), y(5, 21);
  for (int i = 0; i < 5; ++i) {
    x.row(i) = seeded.x.row(0);
    y.row(i) = seeded.y.row(0);
  }
  const PairedDataset ds = PairedDataset::create(x, y, grid);
  const TestReport report = bootstrap_pvalue(ds, 1, tiny_config(), 99);
  CHECK(report.p_value == 0.0);
  CHECK(report.method == "bootstrap");
}

TEST_CASE("bootstrap p-value lies in [0, 1] and t0 ignores pair order") {
  const SampleGrid grid = SampleGrid::uniform(31);
  const PairedDataset ds = example_pair(7, 12, grid, 17);
  const TestReport a = bootstrap_pvalue(ds, 25, tiny_config(), 5);
  CHECK(a.p_value >= 0.0);
  CHECK(a.p_value <= 1.0);

  Eigen::MatrixXd xs(ds.n(), ds.d()), ys(ds.n(), ds.d());
  for (int i = 0; i < ds.n(); ++i) {
    xs.row(i) = ds.x.row(ds.n() - 1 - i);
    ys.row(i) = ds.y.row(ds.n() - 1 - i);
  }
  const PairedDataset reversed = PairedDataset::create(xs, ys, grid);
  const TestReport b = bootstrap_pvalue(reversed, 25, tiny_config(), 5);
  CHECK(std::abs(a.t_value - b.t_value) < 1e-12);
}

TEST_CASE("permutation p-value runs and stays in range") {
  const SampleGrid grid = SampleGrid::uniform(31);
  const PairedDataset ds = example_pair(7, 12, grid, 27);
  const TestReport report = permutation_pvalue(ds, 30, tiny_config(), 4);
  CHECK(report.method == "permutation");
  CHECK(report.p_value >= 0.0);
  CHECK(report.p_value <= 1.0);
}

TEST_CASE("level harness at alpha zero never rejects") {
  const SampleGrid grid = SampleGrid::uniform(21);
  const MonteCarloResult res = mc_level(4, 10, grid, 0.0, 100, tiny_config(), 13, 100);
  CHECK(res.rate == 0.0);
  CHECK(std::isinf(res.critical_value));
}

TEST_CASE("level harness is reproducible and near the nominal level") {
  const SampleGrid grid = SampleGrid::uniform(21);
  const MonteCarloResult a = mc_level(4, 12, grid, 0.10, 200, tiny_config(), 21, 200);
  const MonteCarloResult b = mc_level(4, 12, grid, 0.10, 200, tiny_config(), 21, 200);
  CHECK(a.rate == b.rate);
  CHECK(a.critical_value == b.critical_value);
  CHECK(a.rate > 0.0);
  CHECK(a.rate < 0.35);
}

TEST_CASE("power harness rejects dependent data more often than the level") {
  const SampleGrid grid = SampleGrid::uniform(21);
  StatisticConfig cfg = tiny_config();
  cfg.directions = DirectionStrategy::sample(12, 3);
  const MonteCarloResult level = mc_level(4, 30, grid, 0.05, 200, cfg, 31, 300);
  const MonteCarloResult power = mc_power(10, 30, grid, 0.05, 200, cfg, 31, 300);
  CHECK(power.rate > level.rate);
}

TEST_CASE("example ids are validated per harness") {
  const SampleGrid grid = SampleGrid::uniform(21);
  CHECK_THROWS_AS(mc_level(1, 10, grid, 0.05, 100, tiny_config(), 1, 100), parameter_error);
  CHECK_THROWS_AS(mc_power(4, 10, grid, 0.05, 100, tiny_config(), 1, 100), parameter_error);
}

TEST_CASE("mix-and-split yields proper fractions and a calibrated size") {
  const SampleGrid grid = SampleGrid::uniform(21);
  const PairedDataset ds = example_pair(4, 20, grid, 3);
  const MixSplitResult res = mix_split_size_power(ds, 0.05, 400, 400, tiny_config(), 11);
  CHECK(res.size >= 0.0);
  CHECK(res.size <= 1.0);
  CHECK(res.power >= 0.0);
  CHECK(res.power <= 1.0);
  CHECK_FALSE(res.dropped_one);
  // The size estimate is self-calibrated against the same resampling scheme.
  CHECK(res.size < 0.15);
  // The power resamples duplicate whole pairs, which concentrates the joint
  // estimate even for independent data, so power >= size rather than equal.
  CHECK(res.power >= res.size);
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hindep/grid.hpp"
#include "hindep/statistic.hpp"

namespace hindep {

// Gaussian limit model over the evaluation lattice: independent components
// with plug-in mean and variance at each (s, t).
struct NullModel {
  EvalGrid lattice;
  Eigen::MatrixXd mean;  // rows index s, columns index t
  Eigen::MatrixXd var;
  Eigen::VectorXd f1, f2;              // marginal density estimates on the lattice axes
  Eigen::VectorXd f1_deriv, f2_deriv;  // derivative estimates (zero-weight for symmetric kernels)
  Eigen::MatrixXd f12;                 // joint estimate: product of the marginals
  double h = 0.0;
  double c_limit = 0.0;  // finite-sample surrogate n h^2
  int n = 0;
  Eigen::VectorXd direction_x, direction_y;
};

// Limit mean/variance at one lattice point.
double null_mean(double f1, double f1_deriv, double f2, double f2_deriv, double sqrt_c,
                 const KernelConstants& kc);
double null_variance(double f12, double f1, double f2, const KernelConstants& kc);

// Fits the model on the directions maximizing the statistic over `reference`.
NullModel fit_null_model(const PairedDataset& reference, const StatisticConfig& cfg);
// Fits the model on a fixed direction pair.
NullModel fit_null_model(const PairedDataset& reference, const StatisticConfig& cfg,
                         const Eigen::VectorXd& l1, const Eigen::VectorXd& l2);

struct SupNullDistribution {
  Eigen::VectorXd samples;  // sorted ascending, all >= 0
  int reps = 0;
};

SupNullDistribution sample_sup_distribution(const NullModel& nm, int reps, std::uint64_t seed,
                                            int threads = 0);

// Empirical (1 - alpha) quantile with the higher interpolation rule.
// alpha <= 0 degenerates to +infinity (a test at level 0 never rejects).
double critical_value(const SupNullDistribution& snd, double alpha);
double empirical_critical_value(std::vector<double> stats, double alpha);

// P(sup|Z| > c_alpha - lambda), estimated on the stored draws.
double asymptotic_power(const SupNullDistribution& snd, double c_alpha, double lambda);

struct TestReport {
  double t_value = 0.0;
  double normalized = 0.0;
  double critical_value = 0.0;  // resample-distribution quantile at `alpha`
  double p_value = 0.0;
  double alpha = 0.05;
  std::string method;  // "bootstrap" or "permutation"
  int b = 0;
  double h = 0.0;
  double bandwidth_c = 0.0;
  std::uint64_t seed = 0;
};

// Joint bootstrap of pairs against the observed statistic, p = #(t_j > t0)/B.
TestReport bootstrap_pvalue(const PairedDataset& ds, int b, const StatisticConfig& cfg,
                            std::uint64_t seed, double alpha = 0.05);

// Extension (not part of the resampling scheme above): permutes the y sample
// against x, which enforces independence in each replicate.
TestReport permutation_pvalue(const PairedDataset& ds, int b, const StatisticConfig& cfg,
                              std::uint64_t seed, double alpha = 0.05);

struct MonteCarloResult {
  double rate = 0.0;            // rejection fraction
  double critical_value = 0.0;  // calibrated quantile of the statistic
  double bandwidth_c = 0.0;     // constant actually used
};

// Rejection rate under a null example (4..6): the critical value is
// calibrated on independent-Brownian replicates, then fresh datasets from
// `example_id` are tested against it.
MonteCarloResult mc_level(int example_id, int n, const SampleGrid& grid, double alpha, int reps,
                          const StatisticConfig& cfg, std::uint64_t seed, int calib_reps = 1000);

// Rejection rate under a dependent example (1..3, 7..10), same calibration.
MonteCarloResult mc_power(int example_id, int n, const SampleGrid& grid, double alpha, int reps,
                          const StatisticConfig& cfg, std::uint64_t seed, int calib_reps = 1000);

struct MixSplitResult {
  double size = 0.0;
  double power = 0.0;
  double critical_value = 0.0;
  double bandwidth_c = 0.0;
  bool dropped_one = false;  // odd pooled count forced dropping one curve
};

// Pools and shuffles the x and y curves into two independent halves, uses
// their bootstrap statistics to calibrate a critical value, then estimates
// the size (independent halves) and the power (original paired data).
MixSplitResult mix_split_size_power(const PairedDataset& ds, double alpha, int m1, int m2,
                                    const StatisticConfig& cfg, std::uint64_t seed);

}  // namespace hindep

#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Core>

#include "hindep/grid.hpp"
#include "hindep/kde.hpp"

namespace hindep {

// Evaluation lattice: L+1 equispaced points spanning [-G, G].
struct EvalGrid {
  double g = 0.0;
  int l = 0;
  Eigen::VectorXd points;

  static EvalGrid uniform(double g, int l);
  static EvalGrid from_points(Eigen::VectorXd points);

  int size() const { return static_cast<int>(points.size()); }
};

struct DirectionStrategy {
  enum class Kind { grid, sample };
  Kind kind = Kind::sample;
  int k = 20;                // grid resolution per angle
  int n_dir = 256;           // sampled directions per element
  std::uint64_t seed = 0;    // sampling stream

  static DirectionStrategy grid(int k) { return {Kind::grid, k, 0, 0}; }
  static DirectionStrategy sample(int n_dir, std::uint64_t seed) {
    return {Kind::sample, 0, n_dir, seed};
  }
};

struct StatisticConfig {
  int m = 10;
  DirectionStrategy directions = DirectionStrategy::sample(256, 0);
  double g = 20.0;
  bool auto_g = false;  // when set, G = max |projected score| + h
  int l = 10;
  double bandwidth_c = 0.0;  // <= 0 means: select by cross-validation
  Normalization normalization = Normalization::paper;
  int threads = 0;  // 0 = library default

  void validate() const;
};

struct Argmax {
  int dir1 = 0, dir2 = 0;  // indices into the candidate sets
  int si = 0, ti = 0;      // lattice indices
  double s = 0.0, t = 0.0;
  Eigen::VectorXd direction_x, direction_y;
};

struct StatisticResult {
  double t_value = 0.0;
  double normalized = 0.0;  // sqrt(n h) * t_value
  double h = 0.0;
  double bandwidth_c = 0.0;  // constant behind h (cross-validated when cfg left it open)
  double g_used = 0.0;
  Argmax argmax;
};

// Kernel evaluations K(i, a) = k((scores_i - at_a) / h).
Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd& scores, const Eigen::VectorXd& at, double h);

// Centers and rescales each column of a projection-score matrix to unit
// sample variance (columns with zero spread are only centered). The statistic
// works on studentized scores: one bandwidth can then serve every direction
// and values stay comparable across data laws.
void standardize_scores(Eigen::MatrixXd& scores);

// |joint - product of marginals| over the lattice for one pair of projected
// score vectors. Row a indexes s, column b indexes t.
Eigen::MatrixXd discrepancy_surface(const Eigen::VectorXd& px, const Eigen::VectorXd& py, double h,
                                    const EvalGrid& grid, Normalization normalization);

// Candidate direction sets for the two elements under the given strategy.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> candidate_directions(const DirectionStrategy& strategy,
                                                                 int m);

StatisticResult t_statistic(const PairedDataset& ds, const StatisticConfig& cfg);

// Same statistic with caller-supplied candidate directions (rows).
StatisticResult t_statistic_with_directions(const PairedDataset& ds, const StatisticConfig& cfg,
                                            const Eigen::MatrixXd& dirs1,
                                            const Eigen::MatrixXd& dirs2);

// Resolves the bandwidth constant: an explicit cfg value wins; otherwise
// least-squares cross-validation on projection scores pooled over a probe
// subset of each element's candidate directions, combined as a geometric
// mean. Runs inside t_statistic, so every dataset carries its own bandwidth.
double resolve_bandwidth_c(const PairedDataset& ds, const StatisticConfig& cfg);
double resolve_bandwidth_c(const PairedDataset& ds, const StatisticConfig& cfg,
                           const Eigen::MatrixXd& dirs1, const Eigen::MatrixXd& dirs2);

}  // namespace hindep

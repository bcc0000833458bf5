#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "hindep/statistic.hpp"

namespace hindep {

inline constexpr const char* kVersion = "0.1.0";

// Effective configuration of one CLI invocation. The report echoes it under
// "inputs" so any run can be replayed from its own report.
struct RunConfig {
  std::string command;

  std::string path_x, path_y;  // input CSVs (test, critical-value)
  std::string out_x, out_y;    // simulate outputs
  std::string out_csv;         // optional table emission
  std::string report_path;     // optional JSON report destination

  int example = 4;
  int n = 100;
  int d = 101;

  int m = 10;
  bool use_grid = false;
  int k = 20;
  int n_dir = 256;
  double g = 20.0;
  bool auto_g = false;
  int l = 10;
  double bandwidth_c = 0.0;  // <= 0: cross-validated
  std::string normalization = "paper";

  double alpha = 0.05;
  int b = 500;
  int reps = 1000;
  int calib_reps = 1000;
  int sup_reps = 100000;
  std::string lambdas = "0:10:1";
  bool permutation = false;

  std::uint64_t seed = 0;
  int threads = 0;

  StatisticConfig statistic_config() const;
};

nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

// Executes one subcommand and returns the full report document.
nlohmann::json run(const RunConfig& cfg);

}  // namespace hindep

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hindep/errors.hpp"
#include "hindep/runner.hpp"

namespace {

void add_statistic_flags(CLI::App* cmd, hindep::RunConfig& cfg) {
  cmd->add_option("--m", cfg.m, "basis truncation M");
  cmd->add_option("--n-dir", cfg.n_dir, "sampled directions per element");
  cmd->add_option("--grid", cfg.k, "use the full angle grid with K points per angle")
      ->each([&cfg](const std::string&) { cfg.use_grid = true; });
  cmd->add_option("--g", cfg.g, "lattice half-width G");
  cmd->add_flag("--auto-g", cfg.auto_g, "derive G from the projected score range");
  cmd->add_option("--l", cfg.l, "lattice resolution L");
  cmd->add_option("--bandwidth-c", cfg.bandwidth_c,
                  "bandwidth constant c in h = c n^(-1/6); omit to cross-validate");
  cmd->add_option("--normalization", cfg.normalization, "joint term normalization")
      ->check(CLI::IsMember({"paper", "standard"}));
  cmd->add_option("--seed", cfg.seed, "master seed");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = HINDEP_THREADS or hardware)");
  cmd->add_option("--report", cfg.report_path, "write the JSON report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sup-norm independence test for functional data"};
  app.require_subcommand(1);

  hindep::RunConfig cfg;

  auto* test = app.add_subcommand("test", "bootstrap p-value for a CSV pair");
  test->add_option("--x", cfg.path_x, "CSV with the x curves (rows = samples)")->required();
  test->add_option("--y", cfg.path_y, "CSV with the y curves")->required();
  test->add_option("--b", cfg.b, "bootstrap resamples");
  test->add_option("--alpha", cfg.alpha, "significance level");
  test->add_flag("--permutation", cfg.permutation,
                 "permute y against x instead of resampling pairs");
  add_statistic_flags(test, cfg);

  auto* simulate = app.add_subcommand("simulate", "emit a simulated example pair as CSV");
  simulate->add_option("--example", cfg.example, "example id 1..10")->required();
  simulate->add_option("--n", cfg.n, "sample size");
  simulate->add_option("--d", cfg.d, "grid points per curve");
  simulate->add_option("--out-x", cfg.out_x, "output CSV for x")->required();
  simulate->add_option("--out-y", cfg.out_y, "output CSV for y")->required();
  simulate->add_option("--seed", cfg.seed, "master seed");
  simulate->add_option("--report", cfg.report_path, "write the JSON report here");

  auto* level = app.add_subcommand("level", "Monte-Carlo size under a null example");
  level->add_option("--example", cfg.example, "example id 4..6");
  level->add_option("--n", cfg.n, "sample size");
  level->add_option("--d", cfg.d, "grid points per curve");
  level->add_option("--alpha", cfg.alpha, "significance level");
  level->add_option("--reps", cfg.reps, "Monte-Carlo replicates");
  level->add_option("--calib-reps", cfg.calib_reps, "calibration replicates");
  add_statistic_flags(level, cfg);

  auto* power = app.add_subcommand("power", "Monte-Carlo power under a dependent example");
  power->add_option("--example", cfg.example, "example id 1..3 or 7..10")->required();
  power->add_option("--n", cfg.n, "sample size");
  power->add_option("--d", cfg.d, "grid points per curve");
  power->add_option("--alpha", cfg.alpha, "significance level");
  power->add_option("--reps", cfg.reps, "Monte-Carlo replicates");
  power->add_option("--calib-reps", cfg.calib_reps, "calibration replicates");
  add_statistic_flags(power, cfg);

  auto* asym = app.add_subcommand("asym-power", "asymptotic power curve over lambda");
  asym->add_option("--example", cfg.example, "example id 1..3")->required();
  asym->add_option("--lambdas", cfg.lambdas, "range start:stop:step or comma list");
  asym->add_option("--alpha", cfg.alpha, "significance level");
  asym->add_option("--n", cfg.n, "reference sample size");
  asym->add_option("--d", cfg.d, "grid points per curve");
  asym->add_option("--sup-reps", cfg.sup_reps, "draws of the limiting sup");
  asym->add_option("--out-csv", cfg.out_csv, "write the lambda/power table here");
  add_statistic_flags(asym, cfg);

  auto* crit = app.add_subcommand("critical-value", "critical value from the limiting null model");
  crit->add_option("--x", cfg.path_x, "optional CSV reference for x");
  crit->add_option("--y", cfg.path_y, "optional CSV reference for y");
  crit->add_option("--example", cfg.example, "simulated reference example when no CSVs given");
  crit->add_option("--n", cfg.n, "reference sample size");
  crit->add_option("--d", cfg.d, "grid points per curve");
  crit->add_option("--alpha", cfg.alpha, "significance level");
  crit->add_option("--sup-reps", cfg.sup_reps, "draws of the limiting sup");
  add_statistic_flags(crit, cfg);

  auto* mix = app.add_subcommand("mix-split", "mix-and-split size/power for a CSV pair");
  mix->add_option("--x", cfg.path_x, "CSV with the x curves")->required();
  mix->add_option("--y", cfg.path_y, "CSV with the y curves")->required();
  mix->add_option("--alpha", cfg.alpha, "significance level");
  mix->add_option("--m1", cfg.reps, "calibration and size resamples");
  mix->add_option("--m2", cfg.b, "power resamples");
  add_statistic_flags(mix, cfg);

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    const nlohmann::json report = hindep::run(cfg);
    std::cout << report.dump(2) << std::endl;
    return 0;
  } catch (const hindep::error& e) {
    nlohmann::json err{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << std::endl;
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", {{"code", "internal_error"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << std::endl;
    return 3;
  }
}

#include "hindep/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "hindep/csv.hpp"
#include "hindep/inference.hpp"
#include "hindep/processes.hpp"
#include "hindep/rng.hpp"

namespace hindep {

using nlohmann::json;

StatisticConfig RunConfig::statistic_config() const {
  StatisticConfig cfg;
  cfg.m = m;
  cfg.directions = use_grid ? DirectionStrategy::grid(k) : DirectionStrategy::sample(n_dir, seed);
  cfg.g = g;
  cfg.auto_g = auto_g;
  cfg.l = l;
  cfg.bandwidth_c = bandwidth_c;
  if (normalization == "paper") {
    cfg.normalization = Normalization::paper;
  } else if (normalization == "standard") {
    cfg.normalization = Normalization::standard;
  } else {
    throw parameter_error("normalization must be 'paper' or 'standard'");
  }
  cfg.threads = threads;
  return cfg;
}

json run_config_to_json(const RunConfig& c) {
  return json{{"command", c.command},
              {"path_x", c.path_x},
              {"path_y", c.path_y},
              {"out_x", c.out_x},
              {"out_y", c.out_y},
              {"out_csv", c.out_csv},
              {"example", c.example},
              {"n", c.n},
              {"d", c.d},
              {"m", c.m},
              {"use_grid", c.use_grid},
              {"k", c.k},
              {"n_dir", c.n_dir},
              {"g", c.g},
              {"auto_g", c.auto_g},
              {"l", c.l},
              {"bandwidth_c", c.bandwidth_c},
              {"normalization", c.normalization},
              {"alpha", c.alpha},
              {"b", c.b},
              {"reps", c.reps},
              {"calib_reps", c.calib_reps},
              {"sup_reps", c.sup_reps},
              {"lambdas", c.lambdas},
              {"permutation", c.permutation},
              {"seed", c.seed},
              {"threads", c.threads}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.path_x = j.value("path_x", "");
  c.path_y = j.value("path_y", "");
  c.out_x = j.value("out_x", "");
  c.out_y = j.value("out_y", "");
  c.out_csv = j.value("out_csv", "");
  c.example = j.value("example", 4);
  c.n = j.value("n", 100);
  c.d = j.value("d", 101);
  c.m = j.value("m", 10);
  c.use_grid = j.value("use_grid", false);
  c.k = j.value("k", 20);
  c.n_dir = j.value("n_dir", 256);
  c.g = j.value("g", 20.0);
  c.auto_g = j.value("auto_g", false);
  c.l = j.value("l", 10);
  c.bandwidth_c = j.value("bandwidth_c", 0.0);
  c.normalization = j.value("normalization", "paper");
  c.alpha = j.value("alpha", 0.05);
  c.b = j.value("b", 500);
  c.reps = j.value("reps", 1000);
  c.calib_reps = j.value("calib_reps", 1000);
  c.sup_reps = j.value("sup_reps", 100000);
  c.lambdas = j.value("lambdas", "0:10:1");
  c.permutation = j.value("permutation", false);
  c.seed = j.value("seed", std::uint64_t{0});
  c.threads = j.value("threads", 0);
  return c;
}

namespace {

std::vector<double> parse_lambdas(const std::string& text) {
  std::vector<double> out;
  const auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw parameter_error("bad lambda value '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) throw parameter_error("lambda range needs start:stop:step");
    const double start = to_double(text.substr(0, first));
    const double stop = to_double(text.substr(first + 1, second - first - 1));
    const double step = to_double(text.substr(second + 1));
    if (!(step > 0.0)) throw parameter_error("lambda step must be positive");
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string tok =
          text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!tok.empty()) out.push_back(to_double(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (out.empty()) throw parameter_error("no lambda values given");
  return out;
}

json sup_quantiles(const SupNullDistribution& snd) {
  return json{{"q90", critical_value(snd, 0.10)},
              {"q95", critical_value(snd, 0.05)},
              {"q99", critical_value(snd, 0.01)}};
}

json report_of(const TestReport& r) {
  return json{{"t_value", r.t_value},     {"normalized", r.normalized},
              {"h", r.h},                 {"bandwidth_c", r.bandwidth_c},
              {"p_value", r.p_value},     {"critical_value", r.critical_value},
              {"alpha", r.alpha},         {"method", r.method},
              {"b", r.b}};
}

void write_lambda_csv(const std::string& path, const std::vector<double>& lambdas,
                      const std::vector<double>& power) {
  Eigen::MatrixXd table(static_cast<int>(lambdas.size()), 2);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    table(static_cast<int>(i), 0) = lambdas[i];
    table(static_cast<int>(i), 1) = power[i];
  }
  write_csv_matrix(path, table);
}

json run_test(const RunConfig& cfg) {
  const PairedDataset ds = load_csv_pair(cfg.path_x, cfg.path_y);
  const StatisticConfig sc = cfg.statistic_config();
  const TestReport report = cfg.permutation
                                ? permutation_pvalue(ds, cfg.b, sc, cfg.seed, cfg.alpha)
                                : bootstrap_pvalue(ds, cfg.b, sc, cfg.seed, cfg.alpha);
  json out = report_of(report);
  out["n"] = ds.n();
  out["d"] = ds.d();
  out["reject"] = report.p_value < cfg.alpha;
  return out;
}

json run_simulate(const RunConfig& cfg) {
  if (cfg.out_x.empty() || cfg.out_y.empty())
    throw parameter_error("simulate needs --out-x and --out-y");
  const PairedDataset ds = example_pair(cfg.example, cfg.n, SampleGrid::uniform(cfg.d), cfg.seed);
  write_csv_matrix(cfg.out_x, ds.x);
  write_csv_matrix(cfg.out_y, ds.y);
  return json{{"example", cfg.example}, {"n", ds.n()},           {"d", ds.d()},
              {"x_sum", ds.x.sum()},    {"y_sum", ds.y.sum()},   {"x_mean", ds.x.mean()},
              {"y_mean", ds.y.mean()},  {"out_x", cfg.out_x},    {"out_y", cfg.out_y}};
}

json run_level_or_power(const RunConfig& cfg, bool level) {
  const SampleGrid grid = SampleGrid::uniform(cfg.d);
  const StatisticConfig sc = cfg.statistic_config();
  const MonteCarloResult res =
      level ? mc_level(cfg.example, cfg.n, grid, cfg.alpha, cfg.reps, sc, cfg.seed, cfg.calib_reps)
            : mc_power(cfg.example, cfg.n, grid, cfg.alpha, cfg.reps, sc, cfg.seed, cfg.calib_reps);
  return json{{"example", cfg.example},
              {"n", cfg.n},
              {"alpha", cfg.alpha},
              {"reps", cfg.reps},
              {"calib_reps", cfg.calib_reps},
              {level ? "size" : "power", res.rate},
              {"critical_value", res.critical_value},
              {"bandwidth_c", res.bandwidth_c}};
}

json run_asym_power(const RunConfig& cfg) {
  if (cfg.example < 1 || cfg.example > 3)
    throw parameter_error("asymptotic power study covers examples 1..3");
  const std::vector<double> lambdas = parse_lambdas(cfg.lambdas);
  const SampleGrid grid = SampleGrid::uniform(cfg.d);

  // Exact-null reference with the example's marginal laws.
  const PairedDataset reference = example_pair_decoupled(cfg.example, cfg.n, grid, cfg.seed);
  const StatisticConfig sc = cfg.statistic_config();
  const NullModel nm = fit_null_model(reference, sc);
  const SupNullDistribution snd = sample_sup_distribution(nm, cfg.sup_reps, cfg.seed, cfg.threads);
  const double c_alpha = critical_value(snd, cfg.alpha);

  std::vector<double> power(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    power[i] = asymptotic_power(snd, c_alpha, lambdas[i]);
  if (!cfg.out_csv.empty()) write_lambda_csv(cfg.out_csv, lambdas, power);

  return json{{"example", cfg.example},
              {"n", cfg.n},
              {"alpha", cfg.alpha},
              {"sup_reps", cfg.sup_reps},
              {"critical_value", c_alpha},
              {"h", nm.h},
              {"c_limit", nm.c_limit},
              {"lambdas", lambdas},
              {"power", power},
              {"quantiles", sup_quantiles(snd)}};
}

json run_critical_value(const RunConfig& cfg) {
  const bool from_files = !cfg.path_x.empty() || !cfg.path_y.empty();
  const PairedDataset reference =
      from_files ? load_csv_pair(cfg.path_x, cfg.path_y)
                 : example_pair(cfg.example, cfg.n, SampleGrid::uniform(cfg.d), cfg.seed);
  const StatisticConfig sc = cfg.statistic_config();
  const NullModel nm = fit_null_model(reference, sc);
  const SupNullDistribution snd = sample_sup_distribution(nm, cfg.sup_reps, cfg.seed, cfg.threads);
  return json{{"alpha", cfg.alpha},
              {"critical_value", critical_value(snd, cfg.alpha)},
              {"sup_reps", cfg.sup_reps},
              {"h", nm.h},
              {"c_limit", nm.c_limit},
              {"n", nm.n},
              {"quantiles", sup_quantiles(snd)},
              {"direction_x", std::vector<double>(nm.direction_x.begin(), nm.direction_x.end())},
              {"direction_y", std::vector<double>(nm.direction_y.begin(), nm.direction_y.end())}};
}

json run_mix_split(const RunConfig& cfg) {
  const PairedDataset ds = load_csv_pair(cfg.path_x, cfg.path_y);
  const StatisticConfig sc = cfg.statistic_config();
  const MixSplitResult res =
      mix_split_size_power(ds, cfg.alpha, cfg.reps, cfg.b, sc, cfg.seed);
  return json{{"alpha", cfg.alpha},          {"m1", cfg.reps},
              {"m2", cfg.b},                 {"size", res.size},
              {"power", res.power},          {"critical_value", res.critical_value},
              {"bandwidth_c", res.bandwidth_c}, {"dropped_one", res.dropped_one}};
}

}  // namespace

json run(const RunConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  json outputs;
  if (cfg.command == "test") {
    outputs = run_test(cfg);
  } else if (cfg.command == "simulate") {
    outputs = run_simulate(cfg);
  } else if (cfg.command == "level") {
    outputs = run_level_or_power(cfg, true);
  } else if (cfg.command == "power") {
    outputs = run_level_or_power(cfg, false);
  } else if (cfg.command == "asym-power") {
    outputs = run_asym_power(cfg);
  } else if (cfg.command == "critical-value") {
    outputs = run_critical_value(cfg);
  } else if (cfg.command == "mix-split") {
    outputs = run_mix_split(cfg);
  } else {
    throw parameter_error("unknown subcommand '" + cfg.command + "'");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  json report{{"command", cfg.command},
              {"version", kVersion},
              {"inputs", run_config_to_json(cfg)},
              {"outputs", outputs},
              {"timing_s", seconds}};
  if (!cfg.report_path.empty()) {
    std::ofstream out(cfg.report_path);
    if (!out) throw io_error("cannot write " + cfg.report_path);
    out << report.dump(2) << '\n';
  }
  return report;
}

}  // namespace hindep

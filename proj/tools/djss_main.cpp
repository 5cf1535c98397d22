#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "djss/experiments.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::string> seeds_spec;
  std::optional<double> utilization;
  std::optional<std::string> objective;
  std::optional<long> warmup;
  std::optional<long> measured;
  std::optional<std::string> rules;
  std::optional<std::string> modes;
  std::optional<double> alpha, beta, c;
  std::optional<long> n_mcts;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "scenario JSON file");
  cmd->add_option("--out", o.out_dir, "output directory for CSV reports");
  cmd->add_option("--seeds", o.seeds_spec,
                  "seed list 3,5,9 or range first:count, overrides config");
  cmd->add_option("--utilization", o.utilization, "shop load factor in (0,1)");
  cmd->add_option("--objective", o.objective, "T_mean or WT_mean");
  cmd->add_option("--warmup", o.warmup, "warmup job count");
  cmd->add_option("--measured", o.measured, "measured job count");
  cmd->add_option("--rules", o.rules, "comma-separated dispatching rules");
  cmd->add_option("--modes", o.modes, "comma-separated planner modes");
  cmd->add_option("--alpha", o.alpha, "tardiness/robustness blend in [0,1]");
  cmd->add_option("--beta", o.beta, "idleness penalty horizon");
  cmd->add_option("--c", o.c, "exploration constant");
  cmd->add_option("--n-mcts", o.n_mcts, "search iteration budget");
  cmd->add_option("--jobs", o.jobs, "parallel worker threads");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    if (comma > start) parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

std::vector<std::uint64_t> parse_seed_spec(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::uint64_t first = std::stoull(spec.substr(0, colon));
    std::uint64_t count = std::stoull(spec.substr(colon + 1));
    for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(first + i);
    return seeds;
  }
  for (const auto& part : split_list(spec)) seeds.push_back(std::stoull(part));
  return seeds;
}

djss::ScenarioConfig resolve(const CommonOpts& o) {
  djss::ScenarioConfig cfg;
  if (!o.config_path.empty()) cfg = djss::load_scenario(o.config_path);
  if (o.seeds_spec) cfg.seeds = parse_seed_spec(*o.seeds_spec);
  if (cfg.seeds.empty())
    for (std::uint64_t s = 1; s <= 30; ++s) cfg.seeds.push_back(s);
  if (o.utilization) cfg.instance.utilization = *o.utilization;
  if (o.objective) cfg.objective = *o.objective;
  if (o.warmup) cfg.warmup_jobs = *o.warmup;
  if (o.measured) cfg.measured_jobs = *o.measured;
  if (o.rules) {
    cfg.rules.clear();
    for (const auto& r : split_list(*o.rules))
      cfg.rules.push_back(djss::rule_from_string(r));
  }
  if (o.modes) {
    cfg.modes.clear();
    for (const auto& m : split_list(*o.modes))
      cfg.modes.push_back(djss::mode_from_string(m));
  }
  if (o.alpha) cfg.search.alpha = *o.alpha;
  if (o.beta) cfg.search.beta = *o.beta;
  if (o.c) cfg.search.c = *o.c;
  if (o.n_mcts) cfg.search.n_mcts = *o.n_mcts;
  cfg.validate();
  return cfg;
}

void print_report(const djss::MatrixResult& result) {
  for (const auto& row : result.report) {
    std::cout << to_string(row.mode) << " " << to_string(row.rule)
              << ": mean_wt=" << row.mean << " sd=" << row.sd;
    if (row.improvement) std::cout << " improvement=" << *row.improvement * 100 << "%";
    if (row.p_vs_policy) std::cout << " p_vs_policy=" << *row.p_vs_policy;
    if (row.p_vs_vanilla) std::cout << " p_vs_vanilla=" << *row.p_vs_vanilla;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rolling job shop simulator with search-based dispatching"};
  app.require_subcommand(1);

  CommonOpts run_opts, matrix_opts, sweep_opts, budget_opts, dist_opts;
  CLI::App* run_cmd =
      app.add_subcommand("run", "single planner variant over the seed list");
  add_common(run_cmd, run_opts);
  CLI::App* matrix_cmd =
      app.add_subcommand("matrix", "all rule x mode combinations, paired seeds");
  add_common(matrix_cmd, matrix_opts);
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "alpha x beta grid against the shared baseline");
  add_common(sweep_cmd, sweep_opts);
  CLI::App* budget_cmd =
      app.add_subcommand("budget", "quality and decision time vs iteration budget");
  add_common(budget_cmd, budget_opts);
  CLI::App* dist_cmd = app.add_subcommand(
      "disturbance", "cumulative tardiness traced along the arrival sequence");
  add_common(dist_cmd, dist_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      djss::ScenarioConfig cfg = resolve(run_opts);
      if (cfg.rules.size() != 1 || cfg.modes.size() != 1)
        throw std::invalid_argument("run wants exactly one rule and one mode");
      print_report(djss::run_matrix(cfg, run_opts.out_dir, run_opts.jobs));
    } else if (matrix_cmd->parsed()) {
      djss::ScenarioConfig cfg = resolve(matrix_opts);
      print_report(djss::run_matrix(cfg, matrix_opts.out_dir, matrix_opts.jobs));
    } else if (sweep_cmd->parsed()) {
      djss::ScenarioConfig cfg = resolve(sweep_opts);
      auto sweep = djss::sweep_alpha_beta(cfg, sweep_opts.out_dir, sweep_opts.jobs);
      for (const auto& cell : sweep.cells)
        std::cout << "alpha=" << cell.alpha << " beta=" << cell.beta
                  << " mean_wt=" << cell.mean_wt
                  << " gain=" << cell.gain * 100 << "%\n";
    } else if (budget_cmd->parsed()) {
      djss::ScenarioConfig cfg = resolve(budget_opts);
      auto rows = djss::budget_curve(cfg, budget_opts.out_dir, budget_opts.jobs);
      for (const auto& row : rows)
        std::cout << "budget=" << row.budget << " mode=" << to_string(row.mode)
                  << " mean_wt=" << row.mean_wt_mean << " decision_s="
                  << row.decision_s_mean << "\n";
    } else if (dist_cmd->parsed()) {
      djss::ScenarioConfig cfg = resolve(dist_opts);
      auto curves = djss::disturbance_curve(cfg, dist_opts.out_dir, dist_opts.jobs);
      for (std::size_t m = 0; m < curves.modes.size(); ++m)
        std::cout << to_string(curves.modes[m])
                  << " final_gain=" << curves.mean_gain[m].back() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

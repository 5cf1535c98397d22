#pragma once

#include <optional>
#include <string>
#include <vector>

#include "djss/scenario.hpp"
#include "djss/stats.hpp"

namespace djss {

struct RunRow {
  PlannerMode mode;
  RuleId rule;
  std::uint64_t seed = 0;
  double mean_wt = 0.0;
  double decision_ms_mean = 0.0;
  double decision_ms_std = 0.0;
};

struct ReportRow {
  PlannerMode mode;
  RuleId rule;
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;
  // vs the same rule under policy_only; absent for policy_only rows
  std::optional<double> improvement;
  std::optional<double> p_vs_policy;
  // vs the same rule under vanilla_mcts; dyro rows only
  std::optional<double> p_vs_vanilla;
};

struct MatrixResult {
  std::vector<RunRow> runs;
  std::vector<ReportRow> report;
  // per (mode, rule): the per-seed tardiness in cfg.seeds order
  std::vector<std::vector<double>> cells;
  std::uint64_t digest = 0;
};

struct SweepCell {
  double alpha = 0.0;
  double beta = 0.0;
  double mean_wt = 0.0;
  double gain = 0.0;  // vs the alpha=1 baseline on the same seeds
  std::vector<double> per_seed;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // row-major: alphas outer, betas inner
  std::vector<double> baseline_per_seed;  // alpha=1 runs
};

struct BudgetRow {
  long budget = 0;
  PlannerMode mode;
  double mean_wt_mean = 0.0;
  double mean_wt_sd = 0.0;
  double decision_s_mean = 0.0;
  double decision_s_std = 0.0;
};

struct DisturbanceCurves {
  // per MCTS mode, cumulative tardiness gain vs the policy-only run at each
  // measured arrival, averaged over seeds
  std::vector<PlannerMode> modes;
  std::vector<std::vector<double>> mean_gain;
};

// All runners fan runs out over `jobs` worker threads, write CSVs under
// `out_dir` (created if needed) and throw std::runtime_error if any run
// failed. Instance seeds are shared across planner variants and verified by
// instance fingerprint.
MatrixResult run_matrix(const ScenarioConfig& cfg, const std::string& out_dir,
                        int jobs = 1);
SweepResult sweep_alpha_beta(const ScenarioConfig& cfg, const std::string& out_dir,
                             int jobs = 1);
std::vector<BudgetRow> budget_curve(const ScenarioConfig& cfg,
                                    const std::string& out_dir, int jobs = 1);
DisturbanceCurves disturbance_curve(const ScenarioConfig& cfg,
                                    const std::string& out_dir, int jobs = 1);

// Re-reads a report.csv produced by run_matrix (comment lines carry the
// config digest). Used to guarantee the CSV round-trips losslessly.
struct ParsedReport {
  std::vector<ReportRow> rows;
  std::uint64_t digest = 0;
};
ParsedReport read_report_csv(const std::string& path);

}  // namespace djss

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "djss/planner.hpp"

namespace djss {

// One experiment description: the shop configuration plus which planners to
// run over which paired seeds. Loads from JSON; every field has a default.
struct ScenarioConfig {
  InstanceParams instance;
  std::string objective = "T_mean";  // or WT_mean (weighted jobs)
  long warmup_jobs = 1000;
  long measured_jobs = 5000;

  std::vector<PlannerMode> modes = {PlannerMode::policy_only,
                                    PlannerMode::vanilla_mcts,
                                    PlannerMode::dyro_mcts};
  std::vector<RuleId> rules = {RuleId::random_pick};

  SearchParams search;
  double prior_temperature = 0.5;
  RuleParams rule_params;
  bool reuse_subtree = true;
  bool auto_dispatch_singletons = true;

  std::vector<std::uint64_t> seeds;  // instance seeds; paired across planners

  std::vector<double> sweep_alphas = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<double> sweep_betas = {200.0, 400.0, 800.0, 1600.0, 3200.0};
  std::vector<long> budgets = {25, 50, 100, 200};

  RunConfig run_config() const;
  PlannerConfig planner_config(PlannerMode mode, RuleId rule) const;

  void validate() const;
};

ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);
std::string scenario_to_json_text(const ScenarioConfig& cfg);

// Stable digest of the resolved configuration, embedded in every report.
std::uint64_t scenario_digest(const ScenarioConfig& cfg);

}  // namespace djss

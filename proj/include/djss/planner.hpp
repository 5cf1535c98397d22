#pragma once

#include <cstdint>
#include <vector>

#include "djss/instance.hpp"
#include "djss/mcts.hpp"
#include "djss/metrics.hpp"
#include "djss/rules.hpp"
#include "djss/shop.hpp"

namespace djss {

enum class PlannerMode { policy_only, vanilla_mcts, dyro_mcts };

PlannerMode mode_from_string(const std::string& name);
std::string to_string(PlannerMode mode);

struct PlannerConfig {
  PlannerMode mode = PlannerMode::policy_only;
  RuleId rule = RuleId::spt;  // direct policy, rollouts, and priors
  RuleParams rule_params;
  double prior_temperature = 0.5;
  SearchParams search;  // alpha is forced to 1 under vanilla_mcts
  bool reuse_subtree = true;
  bool auto_dispatch_singletons = true;
  bool trace_disturbances = false;
};

struct RunConfig {
  InstanceParams instance;
  long warmup_jobs = 1000;
  long measured_jobs = 5000;

  long quota() const { return warmup_jobs + measured_jobs; }
};

struct RunResult {
  double mean_weighted_tardiness = 0.0;  // over the measured jobs
  TardinessResult measured;
  GanttRecord gantt;
  std::uint64_t fingerprint = 0;  // of the instance prefix actually consumed

  // cumulative measured tardiness observed by each measured arrival
  std::vector<double> disturbance_trace;

  long decisions = 0;           // explicit decisions put to the planner
  long searches_reused = 0;     // searches that resumed a carried subtree
  long iterations_executed = 0; // fresh MCTS iterations across the run
  double decision_seconds_mean = 0.0;
  double decision_seconds_std = 0.0;
};

// Simulates one rolling run: jobs arrive from a stream seeded with
// `instance_seed` until the warmup+measured quota completes, every surfaced
// decision resolved per `planner`. Tardiness is reported over the measured
// jobs only. `planner_seed` drives rollout and random-rule draws.
RunResult run_planner(const RunConfig& run, const PlannerConfig& planner,
                      std::uint64_t instance_seed, std::uint64_t planner_seed);

}  // namespace djss

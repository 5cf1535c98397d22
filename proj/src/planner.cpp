#include "djss/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace djss {

PlannerMode mode_from_string(const std::string& name) {
  if (name == "policy_only") return PlannerMode::policy_only;
  if (name == "vanilla_mcts") return PlannerMode::vanilla_mcts;
  if (name == "dyro_mcts") return PlannerMode::dyro_mcts;
  throw std::invalid_argument("unknown planner mode: " + name);
}

std::string to_string(PlannerMode mode) {
  switch (mode) {
    case PlannerMode::policy_only: return "policy_only";
    case PlannerMode::vanilla_mcts: return "vanilla_mcts";
    case PlannerMode::dyro_mcts: return "dyro_mcts";
  }
  throw std::invalid_argument("unknown planner mode");
}

namespace {

struct CarriedSubtree {
  std::unique_ptr<SearchNode> node;
  SearchStats stats;
  Time origin = 0;
  std::size_t store_size = 0;  // arrivals seen when the subtree was built

  void reset() { node.reset(); }
};

bool same_decision(const DecisionPoint& a, const DecisionPoint& b) {
  return a.clock == b.clock && a.machine_id == b.machine_id &&
         a.candidates == b.candidates;
}

// Completion times resolved against each measured arrival: trace[k] is the
// cumulative weighted tardiness of measured jobs already finished when
// measured arrival k occurred.
std::vector<double> build_trace(const ShopState& state, long warmup, long measured) {
  std::vector<std::pair<Time, double>> finished;  // (completion, contribution)
  for (const auto& [id, finish] : state.completions) {
    if (id < warmup || id >= warmup + measured) continue;
    const Job& job = state.job(id);
    finished.emplace_back(
        finish, job.weight * std::max(0.0, static_cast<double>(finish) - job.due_date));
  }
  std::sort(finished.begin(), finished.end());

  std::vector<double> trace;
  trace.reserve(measured);
  std::size_t next = 0;
  double cum = 0.0;
  for (long k = 0; k < measured; ++k) {
    Time release = state.job(static_cast<int>(warmup + k)).release_time;
    while (next < finished.size() && finished[next].first <= release)
      cum += finished[next++].second;
    trace.push_back(cum);
  }
  return trace;
}

}  // namespace

RunResult run_planner(const RunConfig& run, const PlannerConfig& planner,
                      std::uint64_t instance_seed, std::uint64_t planner_seed) {
  run.instance.validate();
  if (run.warmup_jobs < 0 || run.measured_jobs <= 0)
    throw std::invalid_argument("need a positive measured job count");

  SearchParams search = planner.search;
  if (planner.mode == PlannerMode::vanilla_mcts) search.alpha = 1.0;
  const bool use_search = planner.mode != PlannerMode::policy_only;

  auto arrivals = generate_instance(instance_seed, run.instance);
  ShopState state = make_shop(run.instance.machine_count, arrivals, run.quota(),
                              planner.auto_dispatch_singletons);

  std::mt19937_64 rng(planner_seed);
  DispatchPolicy policy{planner.rule, planner.rule_params};
  PriorFn prior_fn = [&](const DecisionPoint& dp, const ShopState& st) {
    return compute_prior(planner.rule, dp, st, planner.prior_temperature,
                         planner.rule_params);
  };

  RunResult result;
  std::vector<double> seconds;
  CarriedSubtree carried;

  DecisionPoint dp;
  while (advance(state, dp)) {
    auto t0 = std::chrono::steady_clock::now();
    Operation chosen;
    if (!use_search) {
      chosen = policy.pick(dp, state, rng);
    } else if (dp.candidates.size() == 1) {
      chosen = dp.candidates.front();
      carried.reset();
    } else {
      bool resume = planner.reuse_subtree && carried.node && !carried.node->terminal() &&
                    carried.store_size == state.store->size() &&
                    carried.node->decision && same_decision(*carried.node->decision, dp);
      Time origin = resume ? carried.origin : state.clock;
      RolloutFn rollout_fn = [&, origin](const ShopState& leaf) {
        ShopState scratch = leaf;
        simulate_to_end(scratch, policy, rng);
        return RolloutResult{ledger_mean_tardiness(scratch),
                             robustness(scratch.gantt, search.beta, origin).value};
      };
      SearchTree tree =
          resume ? SearchTree(std::move(carried.node), carried.stats, prior_fn,
                              rollout_fn, search, origin)
                 : SearchTree(clone_for_lookahead(state), prior_fn, rollout_fn,
                              search, origin);
      carried.reset();
      if (!tree.root().decision || !same_decision(*tree.root().decision, dp))
        throw std::logic_error("lookahead decision diverged from the live shop");
      tree.run();
      chosen = tree.best_action();
      result.iterations_executed += tree.executed_iterations();
      if (resume) ++result.searches_reused;
      if (planner.reuse_subtree) {
        carried.node = tree.take_subtree(chosen);
        carried.stats = tree.stats();
        carried.origin = tree.origin();
        carried.store_size = state.store->size();
      }
    }
    auto t1 = std::chrono::steady_clock::now();
    seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    ++result.decisions;
    apply_action(state, dp, chosen);
  }

  std::vector<int> measured_ids(run.measured_jobs);
  for (long k = 0; k < run.measured_jobs; ++k)
    measured_ids[k] = static_cast<int>(run.warmup_jobs + k);
  result.measured = tardiness(state.gantt, *state.store, measured_ids,
                              /*weighted=*/true);
  result.mean_weighted_tardiness = result.measured.mean;
  result.gantt = std::move(state.gantt);
  // regenerated stream: fingerprints must agree across modes regardless of
  // how far past the quota this particular run consumed arrivals
  result.fingerprint = instance_fingerprint(
      *generate_instance(instance_seed, run.instance), static_cast<int>(run.quota()));

  if (planner.trace_disturbances)
    result.disturbance_trace = build_trace(state, run.warmup_jobs, run.measured_jobs);

  if (!seconds.empty()) {
    double sum = 0.0;
    for (double s : seconds) sum += s;
    double mean = sum / static_cast<double>(seconds.size());
    double var = 0.0;
    for (double s : seconds) var += (s - mean) * (s - mean);
    result.decision_seconds_mean = mean;
    result.decision_seconds_std =
        seconds.size() > 1 ? std::sqrt(var / static_cast<double>(seconds.size() - 1)) : 0.0;
  }
  return result;
}

}  // namespace djss

#include <random>

#include "djss/metrics.hpp"
#include "djss/planner.hpp"
#include "doctest.h"

using namespace djss;

namespace {

InstanceParams small_params() {
  InstanceParams p;
  p.machine_count = 5;
  p.op_count_max = 5;
  return p;
}

RunConfig small_run(long warmup, long measured) {
  RunConfig run;
  run.instance = small_params();
  run.warmup_jobs = warmup;
  run.measured_jobs = measured;
  return run;
}

std::vector<Job> first_jobs(std::uint64_t seed, const InstanceParams& p, int n) {
  auto stream = generate_instance(seed, p);
  std::vector<Job> jobs;
  jobs.reserve(n);
  for (int i = 0; i < n; ++i) jobs.push_back(stream->pop());
  return jobs;
}

Time completion_of(const GanttRecord& gantt, const Job& job) {
  for (const auto& machine : gantt.per_machine)
    for (const auto& e : machine)
      if (e.job_id == job.job_id && e.op_index == job.op_count() - 1) return e.end;
  return -1;
}

}  // namespace

TEST_CASE("planner mode names round-trip") {
  for (PlannerMode mode : {PlannerMode::policy_only, PlannerMode::vanilla_mcts,
                           PlannerMode::dyro_mcts}) {
    CHECK(mode_from_string(to_string(mode)) == mode);
  }
  CHECK(to_string(PlannerMode::dyro_mcts) == "dyro_mcts");
  CHECK_THROWS_AS(mode_from_string("mcts"), std::invalid_argument);
}

TEST_CASE("policy-only runs replay a plain rule-driven simulation") {
  RunConfig run = small_run(3, 7);
  for (RuleId rule : {RuleId::holthaus2, RuleId::random_pick}) {
    CAPTURE(to_string(rule));
    PlannerConfig planner;
    planner.mode = PlannerMode::policy_only;
    planner.rule = rule;
    RunResult result = run_planner(run, planner, 11, 99);

    ShopState state = make_shop(run.instance.machine_count,
                                generate_instance(11, run.instance), run.quota(),
                                true);
    std::mt19937_64 rng(99);
    DispatchPolicy policy{rule, {}};
    long decisions = 0;
    DecisionPoint dp;
    while (advance(state, dp)) {
      ++decisions;
      apply_action(state, dp, policy.pick(dp, state, rng));
    }

    CHECK(result.gantt == state.gantt);
    CHECK(result.decisions == decisions);
    CHECK(result.iterations_executed == 0);
    CHECK(result.searches_reused == 0);
    std::vector<int> ids = {3, 4, 5, 6, 7, 8, 9};
    CHECK(result.mean_weighted_tardiness ==
          doctest::Approx(tardiness(state.gantt, *state.store, ids, true).mean));
  }
}

TEST_CASE("tardiness is reported over the measured jobs only") {
  RunConfig run = small_run(2, 3);
  PlannerConfig planner;
  planner.rule = RuleId::spt;
  RunResult result = run_planner(run, planner, 21, 1);

  REQUIRE(result.measured.per_job.size() == 3);
  CHECK(result.measured.per_job[0].first == 2);
  CHECK(result.measured.per_job[1].first == 3);
  CHECK(result.measured.per_job[2].first == 4);
  double sum = 0.0;
  for (const auto& [id, t] : result.measured.per_job) sum += t;
  CHECK(result.mean_weighted_tardiness == doctest::Approx(sum / 3.0));

  // recompute from the returned gantt against a regenerated job list
  auto jobs = first_jobs(21, run.instance, 5);
  for (const auto& [id, t] : result.measured.per_job) {
    const Job& job = jobs[id];
    Time finish = completion_of(result.gantt, job);
    REQUIRE(finish >= 0);
    CHECK(t == doctest::Approx(job.weight *
                               std::max(0.0, static_cast<double>(finish) - job.due_date)));
  }

  CHECK(result.fingerprint ==
        instance_fingerprint(*generate_instance(21, run.instance), 5));
}

TEST_CASE("equal seeds reproduce a run exactly") {
  RunConfig run = small_run(2, 6);
  PlannerConfig planner;
  planner.mode = PlannerMode::dyro_mcts;
  planner.rule = RuleId::random_pick;
  planner.search.n_mcts = 12;

  RunResult a = run_planner(run, planner, 31, 7);
  RunResult b = run_planner(run, planner, 31, 7);
  CHECK(a.gantt == b.gantt);
  CHECK(a.mean_weighted_tardiness == b.mean_weighted_tardiness);
  CHECK(a.decisions == b.decisions);
  CHECK(a.iterations_executed == b.iterations_executed);
  CHECK(a.fingerprint == b.fingerprint);

  RunResult c = run_planner(run, planner, 31, 8);  // new planner seed
  CHECK(c.fingerprint == a.fingerprint);           // same instance
  CHECK(a.gantt != c.gantt);

  RunResult d = run_planner(run, planner, 32, 7);  // new instance
  CHECK(d.fingerprint != a.fingerprint);
}

TEST_CASE("subtree reuse skips already-spent iterations") {
  RunConfig run = small_run(2, 8);
  PlannerConfig planner;
  planner.mode = PlannerMode::dyro_mcts;
  planner.rule = RuleId::spt;
  planner.search.n_mcts = 24;

  planner.reuse_subtree = true;
  RunResult with = run_planner(run, planner, 41, 5);
  planner.reuse_subtree = false;
  RunResult without = run_planner(run, planner, 41, 5);

  CHECK(with.searches_reused > 0);
  CHECK(without.searches_reused == 0);
  CHECK(with.iterations_executed < without.iterations_executed);
  CHECK(with.fingerprint == without.fingerprint);
}

TEST_CASE("vanilla mode ignores the configured blend weight") {
  RunConfig run = small_run(2, 5);
  PlannerConfig planner;
  planner.mode = PlannerMode::vanilla_mcts;
  planner.rule = RuleId::spt;
  planner.search.n_mcts = 16;

  planner.search.alpha = 0.3;
  RunResult a = run_planner(run, planner, 54, 9);
  planner.search.alpha = 1.0;
  RunResult b = run_planner(run, planner, 54, 9);
  CHECK(a.gantt == b.gantt);
  CHECK(a.mean_weighted_tardiness == b.mean_weighted_tardiness);
  CHECK(a.iterations_executed == b.iterations_executed);

  // under the robustness-aware mode the same weight does matter
  planner.mode = PlannerMode::dyro_mcts;
  planner.search.alpha = 0.3;
  RunResult c = run_planner(run, planner, 54, 9);
  CHECK(c.gantt != b.gantt);
}

TEST_CASE("disturbance traces accumulate finished measured work per arrival") {
  RunConfig run = small_run(2, 6);
  PlannerConfig planner;
  planner.rule = RuleId::spt;
  planner.mode = PlannerMode::policy_only;

  RunResult silent = run_planner(run, planner, 61, 3);
  CHECK(silent.disturbance_trace.empty());

  planner.trace_disturbances = true;
  RunResult traced = run_planner(run, planner, 61, 3);
  REQUIRE(traced.disturbance_trace.size() == 6);
  CHECK(traced.gantt == silent.gantt);

  for (std::size_t k = 1; k < traced.disturbance_trace.size(); ++k)
    CHECK(traced.disturbance_trace[k] >= traced.disturbance_trace[k - 1]);

  // independent recomputation: weighted lateness of measured jobs finished by
  // (and including at) each measured arrival instant
  auto jobs = first_jobs(61, run.instance, 8);
  for (long k = 0; k < 6; ++k) {
    Time release = jobs[2 + k].release_time;
    double cum = 0.0;
    for (long j = 2; j < 8; ++j) {
      Time finish = completion_of(traced.gantt, jobs[j]);
      REQUIRE(finish >= 0);
      if (finish <= release)
        cum += jobs[j].weight *
               std::max(0.0, static_cast<double>(finish) - jobs[j].due_date);
    }
    CHECK(traced.disturbance_trace[k] == doctest::Approx(cum));
  }
}

TEST_CASE("bad run configurations are rejected") {
  PlannerConfig planner;
  RunConfig run = small_run(2, 0);
  CHECK_THROWS_AS(run_planner(run, planner, 1, 1), std::invalid_argument);
  run = small_run(-1, 5);
  CHECK_THROWS_AS(run_planner(run, planner, 1, 1), std::invalid_argument);
  run = small_run(2, 5);
  run.instance.op_count_max = 7;  // exceeds the machine count
  CHECK_THROWS_AS(run_planner(run, planner, 1, 1), std::invalid_argument);
}

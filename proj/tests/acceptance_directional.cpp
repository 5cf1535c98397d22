// Directional acceptance suite. Reproduces the benchmark relationships at a
// desk scale the full shop exhibits in miniature: 10 machines, 200 warmup +
// 500 measured jobs, paired instance seeds, search budget 100. Each check
// prints exactly one line:
//   C<k> <name>: PASS|FAIL (details)
// and the process exits nonzero if any check fails. Expect a runtime over an
// hour on one core; progress goes to stderr. Reports land under --out.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "djss/experiments.hpp"
#include "djss/planner.hpp"
#include "djss/scenario.hpp"
#include "djss/stats.hpp"

using namespace djss;

namespace {

struct Outcome {
  std::string name;
  bool pass = true;
  std::string details;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), first);
  return seeds;
}

ScenarioConfig desk_scenario(const std::string& objective, double utilization) {
  ScenarioConfig cfg;
  cfg.instance.machine_count = 10;
  cfg.instance.utilization = utilization;
  cfg.objective = objective;
  cfg.warmup_jobs = 200;
  cfg.measured_jobs = 500;
  cfg.search.alpha = 0.6;
  cfg.search.beta = 800.0;
  cfg.search.c = 3.0;
  cfg.search.n_mcts = 100;
  cfg.rules = {RuleId::random_pick};
  cfg.seeds = seed_range(1, 30);
  return cfg;
}

const ReportRow& report_row(const MatrixResult& result, PlannerMode mode,
                            RuleId rule) {
  for (const auto& row : result.report)
    if (row.mode == mode && row.rule == rule) return row;
  throw std::logic_error("report row missing for " + to_string(mode) + "/" +
                         to_string(rule));
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

// ---------------------------------------------------------------------------
// C7 + C8 share the four-cell benchmark matrix: both objectives at both
// utilization levels, randomly guided, all three planners on paired seeds.

struct MatrixOutcomes {
  Outcome c7;
  Outcome c8;
};

MatrixOutcomes c7_c8_benchmark_matrix(const std::string& out_dir, int jobs) {
  struct Cell {
    std::string objective;
    double utilization;
    MatrixResult result;
  };
  std::vector<Cell> cells = {{"T_mean", 0.85, {}},
                             {"T_mean", 0.95, {}},
                             {"WT_mean", 0.85, {}},
                             {"WT_mean", 0.95, {}}};

  for (auto& cell : cells) {
    auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg = desk_scenario(cell.objective, cell.utilization);
    const std::string leaf = out_dir + "/c7c8_" + cell.objective + "_u" +
                             fmt(cell.utilization, 2);
    cell.result = run_matrix(cfg, leaf, jobs);
    std::fprintf(stderr, "[directional] matrix %s u=%.2f done in %.0f s\n",
                 cell.objective.c_str(), cell.utilization, elapsed(t0));
  }

  Outcome c7{"search-beats-random-policy", true, ""};
  {
    const auto& vanilla =
        report_row(cells[0].result, PlannerMode::vanilla_mcts, RuleId::random_pick);
    const double improvement = vanilla.improvement.value_or(-1.0);
    const double p = vanilla.p_vs_policy.value_or(1.0);
    c7.pass = improvement >= 0.25 && p < 0.05;
    c7.details = "T_mean u=0.85: plain search improves on its random guide by " +
                 fmt(100.0 * improvement, 1) + "% (need >= 25%), p=" + fmt(p, 6);
  }

  Outcome c8{"robust-blend-beats-plain-search", true, ""};
  {
    int significant = 0;
    std::string detail;
    for (const auto& cell : cells) {
      const auto& vanilla =
          report_row(cell.result, PlannerMode::vanilla_mcts, RuleId::random_pick);
      const auto& dyro =
          report_row(cell.result, PlannerMode::dyro_mcts, RuleId::random_pick);
      const double vi = vanilla.improvement.value_or(0.0);
      const double di = dyro.improvement.value_or(0.0);
      const double p = dyro.p_vs_vanilla.value_or(1.0);
      if (di <= vi) c8.pass = false;
      if (p < 0.05) ++significant;
      if (!detail.empty()) detail += ", ";
      detail += cell.objective + "/u" + fmt(cell.utilization, 2) + " " +
                fmt(100.0 * di, 1) + "% vs " + fmt(100.0 * vi, 1) +
                "% (p=" + fmt(p, 4) + ")";
    }
    if (significant < 3) c8.pass = false;
    c8.details = detail + "; significant in " + std::to_string(significant) + "/4";
  }

  return {c7, c8};
}

// ---------------------------------------------------------------------------
// C9: with informed guidance, a shortest-processing-time guide outranks a
// slack-based guide on the same instances. That ordering presumes the
// standalone rules sit far apart (SPT well ahead of SL), and the spread
// hinges on due-date tightness: at the generator default (factor 4) the
// standalone rules tie at this horizon and the comparison is vacuous. This
// cell therefore tightens due dates to factor 3 — the loosest setting where
// the premise holds — and checks the premise alongside the ordering.

Outcome c9_guide_ordering(const std::string& out_dir, int jobs) {
  ScenarioConfig cfg = desk_scenario("T_mean", 0.85);
  cfg.instance.due_date_factor = 3.0;
  cfg.rules = {RuleId::spt, RuleId::sl};
  cfg.modes = {PlannerMode::policy_only, PlannerMode::dyro_mcts};
  cfg.seeds = seed_range(1, 30);

  auto t0 = std::chrono::steady_clock::now();
  MatrixResult result = run_matrix(cfg, out_dir + "/c9_guides", jobs);
  std::fprintf(stderr, "[directional] guide-ordering matrix done in %.0f s\n",
               elapsed(t0));

  // cells are laid out rule-major, mode-minor (matching the scenario order)
  const auto& spt_policy = result.cells[0 * cfg.modes.size() + 0];
  const auto& spt_guided = result.cells[0 * cfg.modes.size() + 1];
  const auto& sl_policy = result.cells[1 * cfg.modes.size() + 0];
  const auto& sl_guided = result.cells[1 * cfg.modes.size() + 1];
  int wins = 0, losses = 0;
  for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
    if (spt_guided[s] < sl_guided[s]) ++wins;
    if (spt_guided[s] > sl_guided[s]) ++losses;
  }
  const double spt_policy_mean = mean_std(spt_policy).mean;
  const double sl_policy_mean = mean_std(sl_policy).mean;
  const double spt_mean = mean_std(spt_guided).mean;
  const double sl_mean = mean_std(sl_guided).mean;
  const bool premise = spt_policy_mean < sl_policy_mean;

  Outcome out{"informed-guide-ordering", premise && wins > losses, ""};
  out.details = "T_mean u=0.85, due-date factor 3: standalone means " +
                fmt(spt_policy_mean, 2) + " (spt) vs " + fmt(sl_policy_mean, 2) +
                " (sl)" + (premise ? "" : " PREMISE VIOLATED") +
                "; spt-guided search wins " + std::to_string(wins) + "/" +
                std::to_string(cfg.seeds.size()) +
                " paired seeds vs sl-guided (means " + fmt(spt_mean, 2) +
                " vs " + fmt(sl_mean, 2) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// C10: the blend-weight/horizon sweep peaks at an interior blend weight, and
// the alpha=1 column is exactly the plain-search baseline.

Outcome c10_sweep_shape(const std::string& out_dir, int jobs) {
  ScenarioConfig cfg = desk_scenario("T_mean", 0.85);
  cfg.seeds = seed_range(101, 8);  // validation seeds, disjoint from the tests

  auto t0 = std::chrono::steady_clock::now();
  SweepResult sweep = sweep_alpha_beta(cfg, out_dir + "/c10_sweep", jobs);
  std::fprintf(stderr, "[directional] 5x5 sweep done in %.0f s\n", elapsed(t0));

  const SweepCell* best = nullptr;
  bool alpha1_zero = true;
  for (const auto& cell : sweep.cells) {
    if (!best || cell.gain > best->gain) best = &cell;
    if (cell.alpha == 1.0 && cell.gain != 0.0) alpha1_zero = false;
  }

  Outcome out{"blend-sweep-shape", true, ""};
  out.pass = best != nullptr && best->gain > 0.0 && best->alpha >= 0.4 &&
             best->alpha <= 0.8 && alpha1_zero;
  out.details = "max gain " + fmt(100.0 * best->gain, 1) + "% at alpha=" +
                fmt(best->alpha, 1) + ", beta=" + fmt(best->beta, 0) +
                (alpha1_zero ? "; alpha=1 column identically 0"
                             : "; alpha=1 column NOT zero");
  return out;
}

// ---------------------------------------------------------------------------
// C11: decision time scales linearly with the budget, and the bigger budget
// does not schedule worse.

Outcome c11_budget_scaling(const std::string& out_dir, int jobs) {
  (void)jobs;  // paired per-seed runs below are sequential
  ScenarioConfig cfg = desk_scenario("T_mean", 0.85);
  cfg.seeds = seed_range(1, 9);
  RunConfig rc = cfg.run_config();

  std::filesystem::create_directories(out_dir + "/c11_budget");
  std::ofstream csv(out_dir + "/c11_budget/budget_pairs.csv");
  csv << "seed,budget,mean_wt,decision_s_mean\n";

  auto t0 = std::chrono::steady_clock::now();
  double time_small = 0.0, time_large = 0.0;
  int wins_le = 0, losses = 0;
  for (std::uint64_t seed : cfg.seeds) {
    double wt[2] = {0.0, 0.0};
    int slot = 0;
    for (long budget : {100L, 1000L}) {
      PlannerConfig pc = cfg.planner_config(PlannerMode::dyro_mcts,
                                            RuleId::random_pick);
      pc.search.n_mcts = budget;
      RunResult r = run_planner(rc, pc, seed, seed ^ 0x9e3779b97f4a7c15ull);
      (budget == 100 ? time_small : time_large) += r.decision_seconds_mean;
      wt[slot++] = r.mean_weighted_tardiness;
      csv << seed << ',' << budget << ',' << r.mean_weighted_tardiness << ','
          << r.decision_seconds_mean << '\n';
    }
    if (wt[1] <= wt[0]) ++wins_le; else ++losses;
    std::fprintf(stderr, "[directional] budget pair seed %llu done (%.0f s)\n",
                 static_cast<unsigned long long>(seed), elapsed(t0));
  }
  time_small /= cfg.seeds.size();
  time_large /= cfg.seeds.size();
  const double ratio = time_large / time_small;

  Outcome out{"budget-scaling", true, ""};
  out.pass = ratio >= 5.0 && ratio <= 15.0 &&
             wins_le > static_cast<int>(cfg.seeds.size()) / 2;
  out.details = "decision time " + fmt(1000.0 * time_small, 2) + " ms -> " +
                fmt(1000.0 * time_large, 2) + " ms (ratio " + fmt(ratio, 2) +
                ", need 10x +/- 50%); larger budget at least as good on " +
                std::to_string(wins_le) + "/" + std::to_string(cfg.seeds.size()) +
                " seeds";
  return out;
}

// ---------------------------------------------------------------------------
// C12: averaged over many runs, the robustness-aware search holds at least
// the plain search's cumulative advantage through the final stretch.

Outcome c12_disturbance_crossover(const std::string& out_dir, int jobs) {
  ScenarioConfig cfg = desk_scenario("T_mean", 0.85);
  cfg.modes = {PlannerMode::vanilla_mcts, PlannerMode::dyro_mcts};
  cfg.seeds = seed_range(1, 34);  // 34 seeds x 3 planners = 102 runs

  auto t0 = std::chrono::steady_clock::now();
  DisturbanceCurves curves = disturbance_curve(cfg, out_dir + "/c12_disturbance",
                                               jobs);
  std::fprintf(stderr, "[directional] disturbance curves done in %.0f s\n",
               elapsed(t0));

  std::size_t vanilla_idx = curves.modes.size(), dyro_idx = curves.modes.size();
  for (std::size_t m = 0; m < curves.modes.size(); ++m) {
    if (curves.modes[m] == PlannerMode::vanilla_mcts) vanilla_idx = m;
    if (curves.modes[m] == PlannerMode::dyro_mcts) dyro_idx = m;
  }
  const auto& vanilla = curves.mean_gain[vanilla_idx];
  const auto& dyro = curves.mean_gain[dyro_idx];

  const std::size_t tail_start = (vanilla.size() * 4) / 5;
  std::size_t held = 0;
  double min_margin = 0.0;
  bool first = true;
  for (std::size_t k = tail_start; k < vanilla.size(); ++k) {
    const double margin = dyro[k] - vanilla[k];
    if (margin >= 0.0) ++held;
    if (first || margin < min_margin) min_margin = margin;
    first = false;
  }
  const std::size_t tail = vanilla.size() - tail_start;

  Outcome out{"disturbance-crossover", held == tail, ""};
  out.details = "102 runs: robust search's cumulative gain >= plain search's "
                "at " + std::to_string(held) + "/" + std::to_string(tail) +
                " of the final 20% of arrivals (min margin " +
                fmt(min_margin, 1) + "); final gains " +
                fmt(dyro.back(), 0) + " vs " + fmt(vanilla.back(), 0);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = "acceptance_out";
  int jobs = 1;
  std::vector<int> only;  // empty = run everything
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out" && i + 1 < argc) out_dir = argv[++i];
    else if (arg == "--jobs" && i + 1 < argc) jobs = std::atoi(argv[++i]);
    else if (arg == "--only" && i + 1 < argc) {
      std::string list = argv[++i];
      for (std::size_t pos = 0; pos < list.size();) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        only.push_back(std::atoi(list.substr(pos, comma - pos).c_str()));
        pos = comma + 1;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--out DIR] [--jobs N] [--only k,...]\n",
                   argv[0]);
      return 2;
    }
  }
  auto want = [&only](int k) {
    return only.empty() || std::find(only.begin(), only.end(), k) != only.end();
  };
  std::filesystem::create_directories(out_dir);

  std::vector<std::pair<int, Outcome>> results;
  auto guard = [&results](int k, const char* name, auto&& fn) {
    try {
      results.push_back({k, fn()});
    } catch (const std::exception& e) {
      results.push_back({k, Outcome{name, false, std::string("exception: ") +
                                                     e.what()}});
    }
  };

  auto t0 = std::chrono::steady_clock::now();
  if (want(7) || want(8)) {
    try {
      auto [c7, c8] = c7_c8_benchmark_matrix(out_dir, jobs);
      results.push_back({7, c7});
      results.push_back({8, c8});
    } catch (const std::exception& e) {
      const std::string why = std::string("exception: ") + e.what();
      results.push_back({7, Outcome{"search-beats-random-policy", false, why}});
      results.push_back(
          {8, Outcome{"robust-blend-beats-plain-search", false, why}});
    }
  }
  if (want(9))
    guard(9, "informed-guide-ordering",
          [&] { return c9_guide_ordering(out_dir, jobs); });
  if (want(10))
    guard(10, "blend-sweep-shape",
          [&] { return c10_sweep_shape(out_dir, jobs); });
  if (want(11))
    guard(11, "budget-scaling",
          [&] { return c11_budget_scaling(out_dir, jobs); });
  if (want(12))
    guard(12, "disturbance-crossover",
          [&] { return c12_disturbance_crossover(out_dir, jobs); });
  std::fprintf(stderr, "[directional] total %.0f s\n", elapsed(t0));

  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool all_pass = true;
  for (const auto& [k, outcome] : results) {
    std::printf("C%d %s: %s (%s)\n", k, outcome.name.c_str(),
                outcome.pass ? "PASS" : "FAIL", outcome.details.c_str());
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}

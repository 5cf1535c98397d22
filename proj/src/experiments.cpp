#include "djss/experiments.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

namespace djss {

namespace {

// Runs tasks over `jobs` threads; collected errors surface as one exception.
void run_pool(std::vector<std::function<void()>>& tasks, int jobs) {
  if (jobs < 1) jobs = 1;
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(tasks.size());
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        tasks[i]();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      } catch (...) {
        errors[i] = "unknown error";
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < std::min<int>(jobs, static_cast<int>(tasks.size())); ++t)
      threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("run " + std::to_string(i) + " failed: " + errors[i]);
}

std::ofstream open_report(const std::string& out_dir, const std::string& name,
                          const ScenarioConfig& cfg) {
  std::filesystem::create_directories(out_dir);
  std::string path = out_dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "# config_digest=" << scenario_digest(cfg) << "\n";
  out << "# config=" << scenario_to_json_text(cfg) << "\n";
  return out;
}

void check_fingerprints(const std::vector<std::uint64_t>& fingerprints,
                        std::size_t seeds, std::size_t variants) {
  // fingerprints laid out variant-major; all variants must agree per seed
  for (std::size_t s = 0; s < seeds; ++s)
    for (std::size_t v = 1; v < variants; ++v)
      if (fingerprints[v * seeds + s] != fingerprints[s])
        throw std::runtime_error(
            "paired runs diverged: variants saw different instances for seed #" +
            std::to_string(s));
}

double improvement_vs(double baseline, double value) {
  if (baseline == 0.0) return 0.0;
  return (baseline - value) / baseline;
}

}  // namespace

MatrixResult run_matrix(const ScenarioConfig& cfg, const std::string& out_dir,
                        int jobs) {
  cfg.validate();
  RunConfig rc = cfg.run_config();
  const std::size_t seeds = cfg.seeds.size();

  struct Variant {
    PlannerMode mode;
    RuleId rule;
  };
  std::vector<Variant> variants;
  for (RuleId rule : cfg.rules)
    for (PlannerMode mode : cfg.modes) variants.push_back({mode, rule});

  std::vector<RunRow> rows(variants.size() * seeds);
  std::vector<std::uint64_t> fingerprints(variants.size() * seeds, 0);
  std::vector<std::vector<double>> cells(variants.size(),
                                         std::vector<double>(seeds, 0.0));

  std::vector<std::function<void()>> tasks;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t s = 0; s < seeds; ++s) {
      tasks.push_back([&, v, s] {
        PlannerConfig pc = cfg.planner_config(variants[v].mode, variants[v].rule);
        RunResult r = run_planner(rc, pc, cfg.seeds[s], cfg.seeds[s] ^ 0x9e3779b97f4a7c15ull);
        rows[v * seeds + s] = {variants[v].mode,
                               variants[v].rule,
                               cfg.seeds[s],
                               r.mean_weighted_tardiness,
                               r.decision_seconds_mean * 1e3,
                               r.decision_seconds_std * 1e3};
        fingerprints[v * seeds + s] = r.fingerprint;
        cells[v][s] = r.mean_weighted_tardiness;
      });
    }
  }
  run_pool(tasks, jobs);
  check_fingerprints(fingerprints, seeds, variants.size());

  MatrixResult result;
  result.runs = std::move(rows);
  result.cells = cells;
  result.digest = scenario_digest(cfg);

  auto find_cell = [&](PlannerMode mode, RuleId rule) -> const std::vector<double>* {
    for (std::size_t v = 0; v < variants.size(); ++v)
      if (variants[v].mode == mode && variants[v].rule == rule) return &cells[v];
    return nullptr;
  };

  for (std::size_t v = 0; v < variants.size(); ++v) {
    ReportRow row;
    row.mode = variants[v].mode;
    row.rule = variants[v].rule;
    row.n = static_cast<int>(seeds);
    MeanStd ms = mean_std(cells[v]);
    row.mean = ms.mean;
    row.sd = ms.sd;
    if (variants[v].mode != PlannerMode::policy_only) {
      if (const auto* base = find_cell(PlannerMode::policy_only, variants[v].rule)) {
        row.improvement = improvement_vs(mean_std(*base).mean, row.mean);
        if (seeds >= 6) row.p_vs_policy = signed_rank_p(*base, cells[v]);
      }
      if (variants[v].mode == PlannerMode::dyro_mcts) {
        if (const auto* van = find_cell(PlannerMode::vanilla_mcts, variants[v].rule))
          if (seeds >= 6) row.p_vs_vanilla = signed_rank_p(*van, cells[v]);
      }
    }
    result.report.push_back(row);
  }

  {
    auto out = open_report(out_dir, "runs.csv", cfg);
    out << "mode,rule,seed,mean_wt,decision_ms_mean,decision_ms_std\n";
    for (const auto& r : result.runs)
      out << to_string(r.mode) << ',' << to_string(r.rule) << ',' << r.seed << ','
          << r.mean_wt << ',' << r.decision_ms_mean << ',' << r.decision_ms_std
          << '\n';
  }
  {
    auto out = open_report(out_dir, "report.csv", cfg);
    out << "mode,rule,n,mean_wt_mean,mean_wt_sd,improvement_vs_policy,"
           "p_vs_policy,p_vs_vanilla\n";
    for (const auto& r : result.report) {
      out << to_string(r.mode) << ',' << to_string(r.rule) << ',' << r.n << ','
          << r.mean << ',' << r.sd << ',';
      if (r.improvement) out << *r.improvement;
      out << ',';
      if (r.p_vs_policy) out << *r.p_vs_policy;
      out << ',';
      if (r.p_vs_vanilla) out << *r.p_vs_vanilla;
      out << '\n';
    }
  }
  return result;
}

SweepResult sweep_alpha_beta(const ScenarioConfig& cfg, const std::string& out_dir,
                             int jobs) {
  cfg.validate();
  if (cfg.sweep_alphas.empty() || cfg.sweep_betas.empty())
    throw std::invalid_argument("sweep needs alphas and betas");
  RunConfig rc = cfg.run_config();
  RuleId rule = cfg.rules.front();
  const std::size_t seeds = cfg.seeds.size();

  SweepResult result;
  result.baseline_per_seed.assign(seeds, 0.0);
  const std::size_t cell_count = cfg.sweep_alphas.size() * cfg.sweep_betas.size();
  result.cells.assign(cell_count, SweepCell{});
  std::vector<std::uint64_t> fingerprints((cell_count + 1) * seeds, 0);

  // gain baseline: the same search with the robustness term switched off
  std::vector<std::function<void()>> tasks;
  for (std::size_t s = 0; s < seeds; ++s) {
    tasks.push_back([&, s] {
      PlannerConfig pc = cfg.planner_config(PlannerMode::dyro_mcts, rule);
      pc.search.alpha = 1.0;
      RunResult r = run_planner(rc, pc, cfg.seeds[s], cfg.seeds[s] ^ 0x9e3779b97f4a7c15ull);
      result.baseline_per_seed[s] = r.mean_weighted_tardiness;
      fingerprints[s] = r.fingerprint;
    });
  }
  for (std::size_t ai = 0; ai < cfg.sweep_alphas.size(); ++ai) {
    for (std::size_t bi = 0; bi < cfg.sweep_betas.size(); ++bi) {
      std::size_t cell = ai * cfg.sweep_betas.size() + bi;
      result.cells[cell].alpha = cfg.sweep_alphas[ai];
      result.cells[cell].beta = cfg.sweep_betas[bi];
      result.cells[cell].per_seed.assign(seeds, 0.0);
      for (std::size_t s = 0; s < seeds; ++s) {
        tasks.push_back([&, cell, ai, bi, s] {
          PlannerConfig pc = cfg.planner_config(PlannerMode::dyro_mcts, rule);
          pc.search.alpha = cfg.sweep_alphas[ai];
          pc.search.beta = cfg.sweep_betas[bi];
          RunResult r =
              run_planner(rc, pc, cfg.seeds[s], cfg.seeds[s] ^ 0x9e3779b97f4a7c15ull);
          result.cells[cell].per_seed[s] = r.mean_weighted_tardiness;
          fingerprints[(cell + 1) * seeds + s] = r.fingerprint;
        });
      }
    }
  }
  run_pool(tasks, jobs);
  check_fingerprints(fingerprints, seeds, cell_count + 1);

  double base_mean = mean_std(result.baseline_per_seed).mean;
  for (auto& cell : result.cells) {
    cell.mean_wt = mean_std(cell.per_seed).mean;
    cell.gain = improvement_vs(base_mean, cell.mean_wt);
  }

  auto out = open_report(out_dir, "heatmap.csv", cfg);
  out << "alpha,beta,n,mean_wt,gain_vs_alpha1\n";
  for (const auto& cell : result.cells)
    out << cell.alpha << ',' << cell.beta << ',' << seeds << ',' << cell.mean_wt
        << ',' << cell.gain << '\n';
  return result;
}

std::vector<BudgetRow> budget_curve(const ScenarioConfig& cfg,
                                    const std::string& out_dir, int jobs) {
  cfg.validate();
  if (cfg.budgets.empty()) throw std::invalid_argument("budget curve needs budgets");
  RunConfig rc = cfg.run_config();
  RuleId rule = cfg.rules.front();
  const std::size_t seeds = cfg.seeds.size();

  std::vector<PlannerMode> modes;
  for (PlannerMode m : cfg.modes)
    if (m != PlannerMode::policy_only) modes.push_back(m);
  if (modes.empty()) throw std::invalid_argument("budget curve needs an MCTS mode");

  struct Cell {
    std::vector<double> wt;
    std::vector<double> sec_mean;
  };
  std::vector<Cell> cells(cfg.budgets.size() * modes.size());
  for (auto& c : cells) {
    c.wt.assign(seeds, 0.0);
    c.sec_mean.assign(seeds, 0.0);
  }

  std::vector<std::function<void()>> tasks;
  for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      std::size_t cell = b * modes.size() + m;
      for (std::size_t s = 0; s < seeds; ++s) {
        tasks.push_back([&, b, m, cell, s] {
          PlannerConfig pc = cfg.planner_config(modes[m], rule);
          pc.search.n_mcts = cfg.budgets[b];
          RunResult r =
              run_planner(rc, pc, cfg.seeds[s], cfg.seeds[s] ^ 0x9e3779b97f4a7c15ull);
          cells[cell].wt[s] = r.mean_weighted_tardiness;
          cells[cell].sec_mean[s] = r.decision_seconds_mean;
        });
      }
    }
  }
  run_pool(tasks, jobs);

  std::vector<BudgetRow> rows;
  for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const Cell& cell = cells[b * modes.size() + m];
      BudgetRow row;
      row.budget = cfg.budgets[b];
      row.mode = modes[m];
      MeanStd wt = mean_std(cell.wt);
      MeanStd sec = mean_std(cell.sec_mean);
      row.mean_wt_mean = wt.mean;
      row.mean_wt_sd = wt.sd;
      row.decision_s_mean = sec.mean;
      row.decision_s_std = sec.sd;
      rows.push_back(row);
    }
  }

  auto out = open_report(out_dir, "curve.csv", cfg);
  out << "budget,mode,n,mean_wt_mean,mean_wt_sd,decision_s_mean,decision_s_std\n";
  for (const auto& r : rows)
    out << r.budget << ',' << to_string(r.mode) << ',' << seeds << ','
        << r.mean_wt_mean << ',' << r.mean_wt_sd << ',' << r.decision_s_mean << ','
        << r.decision_s_std << '\n';
  return rows;
}

DisturbanceCurves disturbance_curve(const ScenarioConfig& cfg,
                                    const std::string& out_dir, int jobs) {
  cfg.validate();
  RunConfig rc = cfg.run_config();
  RuleId rule = cfg.rules.front();
  const std::size_t seeds = cfg.seeds.size();

  // policy_only is the gain reference and always runs, listed in cfg or not
  std::vector<PlannerMode> all_modes = {PlannerMode::policy_only};
  for (PlannerMode m : cfg.modes)
    if (m != PlannerMode::policy_only) all_modes.push_back(m);

  std::vector<std::vector<std::vector<double>>> traces(
      all_modes.size(), std::vector<std::vector<double>>(seeds));
  std::vector<std::uint64_t> fingerprints(all_modes.size() * seeds, 0);

  std::vector<std::function<void()>> tasks;
  for (std::size_t m = 0; m < all_modes.size(); ++m) {
    for (std::size_t s = 0; s < seeds; ++s) {
      tasks.push_back([&, m, s] {
        PlannerConfig pc = cfg.planner_config(all_modes[m], rule);
        pc.trace_disturbances = true;
        RunResult r =
            run_planner(rc, pc, cfg.seeds[s], cfg.seeds[s] ^ 0x9e3779b97f4a7c15ull);
        traces[m][s] = std::move(r.disturbance_trace);
        fingerprints[m * seeds + s] = r.fingerprint;
      });
    }
  }
  run_pool(tasks, jobs);
  check_fingerprints(fingerprints, seeds, all_modes.size());

  DisturbanceCurves curves;
  for (std::size_t m = 1; m < all_modes.size(); ++m) {
    curves.modes.push_back(all_modes[m]);
    std::vector<double> gain(rc.measured_jobs, 0.0);
    for (long k = 0; k < rc.measured_jobs; ++k) {
      double sum = 0.0;
      for (std::size_t s = 0; s < seeds; ++s)
        sum += traces[0][s][k] - traces[m][s][k];
      gain[k] = sum / static_cast<double>(seeds);
    }
    curves.mean_gain.push_back(std::move(gain));
  }

  auto out = open_report(out_dir, "curve.csv", cfg);
  out << "arrival,mode,cumulative_gain_vs_policy\n";
  for (std::size_t m = 0; m < curves.modes.size(); ++m)
    for (long k = 0; k < rc.measured_jobs; ++k)
      out << k << ',' << to_string(curves.modes[m]) << ',' << curves.mean_gain[m][k]
          << '\n';
  return curves;
}

ParsedReport read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ParsedReport parsed;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# config_digest=", 0) == 0) {
      parsed.digest = std::stoull(line.substr(std::string("# config_digest=").size()));
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 8)
      throw std::runtime_error("bad report row in " + path + ": " + line);
    ReportRow row;
    row.mode = mode_from_string(fields[0]);
    row.rule = rule_from_string(fields[1]);
    row.n = std::stoi(fields[2]);
    row.mean = std::stod(fields[3]);
    row.sd = std::stod(fields[4]);
    if (!fields[5].empty()) row.improvement = std::stod(fields[5]);
    if (!fields[6].empty()) row.p_vs_policy = std::stod(fields[6]);
    if (!fields[7].empty()) row.p_vs_vanilla = std::stod(fields[7]);
    parsed.rows.push_back(row);
  }
  return parsed;
}

}  // namespace djss

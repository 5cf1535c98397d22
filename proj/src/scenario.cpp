#include "djss/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace djss {

using nlohmann::json;

RunConfig ScenarioConfig::run_config() const {
  RunConfig rc;
  rc.instance = instance;
  rc.instance.weighted = objective == "WT_mean";
  rc.warmup_jobs = warmup_jobs;
  rc.measured_jobs = measured_jobs;
  return rc;
}

PlannerConfig ScenarioConfig::planner_config(PlannerMode mode, RuleId rule) const {
  PlannerConfig pc;
  pc.mode = mode;
  pc.rule = rule;
  pc.rule_params = rule_params;
  pc.prior_temperature = prior_temperature;
  pc.search = search;
  pc.reuse_subtree = reuse_subtree;
  pc.auto_dispatch_singletons = auto_dispatch_singletons;
  return pc;
}

void ScenarioConfig::validate() const {
  instance.validate();
  if (objective != "T_mean" && objective != "WT_mean")
    throw std::invalid_argument("objective must be T_mean or WT_mean");
  if (warmup_jobs < 0 || measured_jobs <= 0)
    throw std::invalid_argument("need a positive measured job count");
  if (modes.empty() || rules.empty())
    throw std::invalid_argument("need at least one mode and one rule");
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  if (search.n_mcts < 1) throw std::invalid_argument("n_mcts must be positive");
  if (!(search.alpha >= 0.0 && search.alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1]");
  if (search.beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (search.c < 0.0) throw std::invalid_argument("c must be non-negative");
  if (prior_temperature <= 0.0)
    throw std::invalid_argument("prior_temperature must be positive");
}

namespace {

std::vector<std::uint64_t> parse_seeds(const json& j) {
  std::vector<std::uint64_t> seeds;
  if (j.is_array()) {
    for (const auto& v : j) seeds.push_back(v.get<std::uint64_t>());
  } else if (j.is_object()) {
    std::uint64_t first = j.at("first").get<std::uint64_t>();
    std::uint64_t count = j.at("count").get<std::uint64_t>();
    for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(first + i);
  } else {
    throw std::invalid_argument("seeds must be an array or {first, count}");
  }
  return seeds;
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  cfg.instance.machine_count = j.value("machines", cfg.instance.machine_count);
  cfg.instance.utilization = j.value("utilization", cfg.instance.utilization);
  if (j.contains("op_count")) {
    cfg.instance.op_count_min = j["op_count"].at(0).get<int>();
    cfg.instance.op_count_max = j["op_count"].at(1).get<int>();
  }
  if (j.contains("proc_time")) {
    cfg.instance.proc_time_min = j["proc_time"].at(0).get<int>();
    cfg.instance.proc_time_max = j["proc_time"].at(1).get<int>();
  }
  cfg.instance.due_date_factor = j.value("due_date_factor", cfg.instance.due_date_factor);
  cfg.objective = j.value("objective", cfg.objective);
  cfg.warmup_jobs = j.value("warmup_jobs", cfg.warmup_jobs);
  cfg.measured_jobs = j.value("measured_jobs", cfg.measured_jobs);

  if (j.contains("modes")) {
    cfg.modes.clear();
    for (const auto& m : j["modes"]) cfg.modes.push_back(mode_from_string(m.get<std::string>()));
  }
  if (j.contains("rules")) {
    cfg.rules.clear();
    for (const auto& r : j["rules"]) cfg.rules.push_back(rule_from_string(r.get<std::string>()));
  }

  cfg.search.alpha = j.value("alpha", cfg.search.alpha);
  cfg.search.beta = j.value("beta", cfg.search.beta);
  cfg.search.c = j.value("c", cfg.search.c);
  cfg.search.n_mcts = j.value("n_mcts", cfg.search.n_mcts);
  if (j.contains("selection")) {
    std::string sel = j["selection"].get<std::string>();
    if (sel == "visit_count")
      cfg.search.selection = SearchParams::Selection::visit_count;
    else if (sel == "value")
      cfg.search.selection = SearchParams::Selection::value;
    else
      throw std::invalid_argument("selection must be visit_count or value");
  }
  cfg.prior_temperature = j.value("prior_temperature", cfg.prior_temperature);
  cfg.rule_params.atc_k = j.value("atc_k", cfg.rule_params.atc_k);
  cfg.rule_params.covert_k = j.value("covert_k", cfg.rule_params.covert_k);
  cfg.reuse_subtree = j.value("reuse_subtree", cfg.reuse_subtree);
  cfg.auto_dispatch_singletons =
      j.value("auto_dispatch_singletons", cfg.auto_dispatch_singletons);

  if (j.contains("seeds")) cfg.seeds = parse_seeds(j["seeds"]);
  if (j.contains("sweep_alphas"))
    cfg.sweep_alphas = j["sweep_alphas"].get<std::vector<double>>();
  if (j.contains("sweep_betas"))
    cfg.sweep_betas = j["sweep_betas"].get<std::vector<double>>();
  if (j.contains("budgets")) cfg.budgets = j["budgets"].get<std::vector<long>>();

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
  json j;
  j["machines"] = cfg.instance.machine_count;
  j["utilization"] = cfg.instance.utilization;
  j["op_count"] = {cfg.instance.op_count_min, cfg.instance.op_count_max};
  j["proc_time"] = {cfg.instance.proc_time_min, cfg.instance.proc_time_max};
  j["due_date_factor"] = cfg.instance.due_date_factor;
  j["objective"] = cfg.objective;
  j["warmup_jobs"] = cfg.warmup_jobs;
  j["measured_jobs"] = cfg.measured_jobs;
  std::vector<std::string> modes, rules;
  for (auto m : cfg.modes) modes.push_back(to_string(m));
  for (auto r : cfg.rules) rules.push_back(to_string(r));
  j["modes"] = modes;
  j["rules"] = rules;
  j["alpha"] = cfg.search.alpha;
  j["beta"] = cfg.search.beta;
  j["c"] = cfg.search.c;
  j["n_mcts"] = cfg.search.n_mcts;
  j["selection"] = cfg.search.selection == SearchParams::Selection::visit_count
                       ? "visit_count"
                       : "value";
  j["prior_temperature"] = cfg.prior_temperature;
  j["atc_k"] = cfg.rule_params.atc_k;
  j["covert_k"] = cfg.rule_params.covert_k;
  j["reuse_subtree"] = cfg.reuse_subtree;
  j["auto_dispatch_singletons"] = cfg.auto_dispatch_singletons;
  j["seeds"] = cfg.seeds;
  j["sweep_alphas"] = cfg.sweep_alphas;
  j["sweep_betas"] = cfg.sweep_betas;
  j["budgets"] = cfg.budgets;
  return j.dump();
}

std::uint64_t scenario_digest(const ScenarioConfig& cfg) {
  std::string text = scenario_to_json_text(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace djss

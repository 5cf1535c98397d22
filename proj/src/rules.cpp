#include "djss/rules.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace djss {

namespace {

const char* kRuleNames[] = {"SPT",    "SWINQ",     "CR",        "SL",
                            "ATC",    "COVERT",    "MOD",       "ANDERSON",
                            "HOLTHAUS1", "HOLTHAUS2", "RANDOM"};

// Work committed to the machine an op's successor needs: buffered work plus
// the unfinished part of whatever is running there. Zero for a final op.
double work_in_next_queue(const Operation& op, const Job& job,
                          const ShopState& state) {
  if (op.index + 1 >= job.op_count()) return 0.0;
  const MachineState& next = state.machines[job.route[op.index + 1].machine_id];
  double work = static_cast<double>(next.buffered_work);
  if (next.busy) work += static_cast<double>(next.busy_until - state.clock);
  return work;
}

double next_proc_time(const Operation& op, const Job& job) {
  if (op.index + 1 >= job.op_count()) return 0.0;
  return job.route[op.index + 1].proc_time;
}

double critical_ratio(const Operation& op, const Job& job, double now) {
  double allowance = job.due_date - now;
  if (allowance == 0.0) allowance = 1e-9;
  return job.remaining_work(op.index) / allowance;
}

struct DecisionContext {
  double now = 0.0;
  double mean_candidate_proc = 0.0;  // for ATC
};

DecisionContext make_context(const DecisionPoint& decision) {
  DecisionContext ctx;
  ctx.now = static_cast<double>(decision.clock);
  double sum = 0.0;
  for (const auto& op : decision.candidates) sum += op.proc_time;
  ctx.mean_candidate_proc = sum / static_cast<double>(decision.candidates.size());
  return ctx;
}

double score_one(RuleId rule, const Operation& op, const DecisionContext& ctx,
                 const ShopState& state, const RuleParams& params) {
  const Job& job = state.job(op.job_id);
  double p = op.proc_time;
  switch (rule) {
    case RuleId::spt:
      return -p;
    case RuleId::swinq:
      return -work_in_next_queue(op, job, state);
    case RuleId::cr:
      return critical_ratio(op, job, ctx.now);
    case RuleId::sl:
      return -(job.due_date - ctx.now);
    case RuleId::atc: {
      double slack = job.due_date - ctx.now - job.remaining_work(op.index);
      return job.weight / p *
             std::exp(-std::max(0.0, slack) / (params.atc_k * ctx.mean_candidate_proc));
    }
    case RuleId::covert: {
      double slack = job.due_date - ctx.now - job.remaining_work(op.index);
      double window = params.covert_k * job.remaining_work(op.index);
      return job.weight / p * std::max(0.0, 1.0 - std::max(0.0, slack) / window);
    }
    case RuleId::mod: {
      // operation due dates spread over the job's allowance in proportion to
      // cumulative processing time
      double span = job.due_date - static_cast<double>(job.release_time);
      double od = job.release_time +
                  span * job.work_through(op.index) / job.total_proc_time();
      return -std::max(ctx.now + p, od);
    }
    case RuleId::anderson:
      return critical_ratio(op, job, ctx.now) - p;
    case RuleId::holthaus1:
      return -(p + work_in_next_queue(op, job, state) + (job.due_date - ctx.now));
    case RuleId::holthaus2:
      return -(2.0 * p + work_in_next_queue(op, job, state) + next_proc_time(op, job));
    case RuleId::random_pick:
      return 0.0;
  }
  throw std::invalid_argument("unknown rule");
}

}  // namespace

RuleId rule_from_string(const std::string& name) {
  std::string upper = name;
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (std::size_t i = 0; i < std::size(kRuleNames); ++i)
    if (upper == kRuleNames[i]) return static_cast<RuleId>(i);
  throw std::invalid_argument("unknown dispatching rule: " + name);
}

std::string to_string(RuleId rule) {
  return kRuleNames[static_cast<std::size_t>(rule)];
}

const std::vector<RuleId>& all_rules() {
  static const std::vector<RuleId> rules = [] {
    std::vector<RuleId> r;
    for (std::size_t i = 0; i < std::size(kRuleNames); ++i)
      r.push_back(static_cast<RuleId>(i));
    return r;
  }();
  return rules;
}

std::vector<PriorityScore> rank(RuleId rule, const DecisionPoint& decision,
                                const ShopState& state, const RuleParams& params) {
  if (decision.candidates.empty())
    throw std::invalid_argument("rank: empty candidate set");
  DecisionContext ctx = make_context(decision);
  std::vector<PriorityScore> scores;
  scores.reserve(decision.candidates.size());
  for (const auto& op : decision.candidates)
    scores.push_back({op, score_one(rule, op, ctx, state, params)});
  return scores;
}

int pick_index(RuleId rule, const DecisionPoint& decision, const ShopState& state,
               const RuleParams& params, std::mt19937_64& rng) {
  int n = static_cast<int>(decision.candidates.size());
  if (n == 0) throw std::invalid_argument("pick_index: empty candidate set");
  if (rule == RuleId::random_pick)
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  DecisionContext ctx = make_context(decision);
  int best = 0;
  double best_score = score_one(rule, decision.candidates[0], ctx, state, params);
  for (int i = 1; i < n; ++i) {
    double s = score_one(rule, decision.candidates[i], ctx, state, params);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;  // candidates are job_id-sorted, so ties keep the lowest id
}

std::vector<double> to_prior(const std::vector<PriorityScore>& scores,
                             double temperature) {
  if (scores.empty()) throw std::invalid_argument("to_prior: empty score set");
  if (temperature <= 0.0) throw std::invalid_argument("temperature must be positive");

  double lo = scores[0].score, hi = scores[0].score;
  for (const auto& s : scores) {
    lo = std::min(lo, s.score);
    hi = std::max(hi, s.score);
  }
  std::vector<double> prior(scores.size());
  double max_norm = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    prior[i] = hi > lo ? (scores[i].score - lo) / (hi - lo) : 0.0;
    max_norm = std::max(max_norm, prior[i]);
  }
  double sum = 0.0;
  for (double& v : prior) {
    v = std::exp((v - max_norm) / temperature);
    sum += v;
  }
  for (double& v : prior) v /= sum;
  return prior;
}

std::vector<double> compute_prior(RuleId rule, const DecisionPoint& decision,
                                  const ShopState& state, double temperature,
                                  const RuleParams& params) {
  if (rule == RuleId::random_pick)
    return std::vector<double>(decision.candidates.size(),
                               1.0 / static_cast<double>(decision.candidates.size()));
  return to_prior(rank(rule, decision, state, params), temperature);
}

const Operation& DispatchPolicy::pick(const DecisionPoint& decision,
                                      const ShopState& state,
                                      std::mt19937_64& rng) const {
  return decision.candidates[pick_index(rule, decision, state, params, rng)];
}

void simulate_to_end(ShopState& state, const DispatchPolicy& policy,
                     std::mt19937_64& rng) {
  DecisionPoint dp;
  while (advance(state, dp))
    apply_action(state, dp, policy.pick(dp, state, rng));
}

}  // namespace djss

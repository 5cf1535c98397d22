#pragma once

#include <random>
#include <string>
#include <vector>

#include "djss/shop.hpp"

namespace djss {

enum class RuleId {
  spt,        // shortest processing time
  swinq,      // least work in next queue
  cr,         // critical ratio: remaining work over allowance
  sl,         // minimum slack to due date
  atc,        // apparent tardiness cost
  covert,     // cost over time
  mod,        // modified operation due date
  anderson,   // critical ratio plus processing time
  holthaus1,  // processing time + work in next queue + slack
  holthaus2,  // 2x processing time + work in next queue + next op time
  random_pick
};

RuleId rule_from_string(const std::string& name);  // throws std::invalid_argument
std::string to_string(RuleId rule);
const std::vector<RuleId>& all_rules();

struct RuleParams {
  double atc_k = 3.0;
  double covert_k = 2.0;

  friend bool operator==(const RuleParams&, const RuleParams&) = default;
};

struct PriorityScore {
  Operation op;
  double score = 0.0;  // higher is preferred
};

// Scores every candidate of the decision under `rule`. Scores are oriented so
// the dispatch choice is the argmax; ties resolve to the lowest job_id.
std::vector<PriorityScore> rank(RuleId rule, const DecisionPoint& decision,
                                const ShopState& state,
                                const RuleParams& params = {});

// Argmax of rank() without materializing the scores. random_pick consumes one
// draw from rng; the other rules never touch it.
int pick_index(RuleId rule, const DecisionPoint& decision, const ShopState& state,
               const RuleParams& params, std::mt19937_64& rng);

// Min-max normalizes the scores, then softmax at `temperature`. All-equal
// scores (and random_pick's flat ranking) come out uniform.
std::vector<double> to_prior(const std::vector<PriorityScore>& scores,
                             double temperature);

std::vector<double> compute_prior(RuleId rule, const DecisionPoint& decision,
                                  const ShopState& state, double temperature,
                                  const RuleParams& params = {});

// A rule bound to its constants, usable as a rollout or direct policy.
struct DispatchPolicy {
  RuleId rule = RuleId::spt;
  RuleParams params;

  const Operation& pick(const DecisionPoint& decision, const ShopState& state,
                        std::mt19937_64& rng) const;
};

// Dispatches with `policy` until no events remain (or the quota is reached).
void simulate_to_end(ShopState& state, const DispatchPolicy& policy,
                     std::mt19937_64& rng);

}  // namespace djss

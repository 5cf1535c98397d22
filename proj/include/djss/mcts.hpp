#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "djss/shop.hpp"

namespace djss {

struct SearchParams {
  double alpha = 0.6;   // weight of the tardiness value vs the robustness value
  double beta = 800.0;  // idleness penalty horizon, consumed by the rollout
  double c = 3.0;       // exploration constant
  long n_mcts = 100;    // iteration budget per decision, reused work included

  enum class Selection { visit_count, value };
  Selection selection = Selection::visit_count;
};

// Extremes of all rollout outcomes seen in one search, shared tree-wide so
// edge statistics can be rescaled against the current spread on demand.
struct SearchStats {
  long samples = 0;
  double t_min = 0.0, t_max = 0.0;
  double r_min = 0.0, r_max = 0.0;

  void record(double tardiness, double robustness);

  // Maps a mean tardiness into [0, 1], 1 at the best (lowest) outcome seen.
  double scale_tardiness(double mean) const;
  // Maps a mean robustness into [0, 1], 1 at the highest outcome seen.
  double scale_robustness(double mean) const;
};

struct RolloutResult {
  double tardiness = 0.0;
  double robustness = 0.0;
};

using RolloutFn = std::function<RolloutResult(const ShopState& leaf)>;
using PriorFn =
    std::function<std::vector<double>(const DecisionPoint&, const ShopState&)>;

struct SearchNode;

struct SearchEdge {
  Operation action;
  double prior = 0.0;
  long n = 0;
  double sum_tardiness = 0.0;
  double sum_robustness = 0.0;
  std::unique_ptr<SearchNode> child;

  double q(const SearchStats& stats) const;    // 0.5 before the first visit
  double rho(const SearchStats& stats) const;  // likewise
  // alpha * q + (1 - alpha) * rho
  double blended(const SearchStats& stats, double alpha) const;
};

struct SearchNode {
  ShopState state;
  std::optional<DecisionPoint> decision;  // nullopt: no further decisions
  std::vector<SearchEdge> edges;          // in expansion order
  std::vector<std::pair<Operation, double>> pending;  // unexpanded, prior desc
  std::size_t next_pending = 0;
  long visits = 0;
  long evals = 0;  // direct evaluations (creation rollout, terminal re-visits)
  std::optional<RolloutResult> terminal_outcome;

  bool terminal() const { return !decision.has_value(); }
  bool fully_expanded() const { return next_pending >= pending.size(); }
};

// Tree-policy step: picks the child edge maximizing
// blended + c * prior * sqrt(parent visits) / (1 + n), ties to lowest job_id.
SearchEdge& select_child(SearchNode& node, const SearchStats& stats,
                         const SearchParams& params);

class SearchTree {
 public:
  // Fresh search from a lookahead state captured at a decision.
  SearchTree(ShopState lookahead_state, PriorFn prior_fn, RolloutFn rollout_fn,
             SearchParams params, Time origin);
  // Search resumed from a reused subtree; carried statistics keep their
  // original scaling reference and the carried origin stays in force.
  SearchTree(std::unique_ptr<SearchNode> reused_root, SearchStats carried,
             PriorFn prior_fn, RolloutFn rollout_fn, SearchParams params,
             Time origin);

  // One select/expand/evaluate/backpropagate pass. False once the budget
  // (including inherited visits) is spent.
  bool step();
  void run();

  const SearchNode& root() const { return *root_; }
  const SearchStats& stats() const { return stats_; }
  Time origin() const { return origin_; }
  long executed_iterations() const { return executed_iterations_; }

  // Visit share per root candidate, aligned with the root decision's
  // candidate order. Zeros if nothing was expanded.
  std::vector<double> visit_distribution() const;
  const Operation& best_action() const;

  // Detaches the subtree reached by `executed`, or null if never expanded.
  std::unique_ptr<SearchNode> take_subtree(const Operation& executed);

 private:
  std::unique_ptr<SearchNode> make_node(ShopState&& state);
  SearchEdge& expand_next(SearchNode& node);
  RolloutResult evaluate(SearchNode& node);

  std::unique_ptr<SearchNode> root_;
  SearchStats stats_;
  PriorFn prior_fn_;
  RolloutFn rollout_fn_;
  SearchParams params_;
  Time origin_ = 0;
  long executed_iterations_ = 0;
  std::vector<SearchEdge*> path_;
};

struct SearchOutcome {
  std::vector<double> pi;
  Operation chosen;
  long iterations = 0;
};

// Convenience: build a tree on a fresh lookahead of `state`, run the full
// budget, and report the result. `decision` must be the pending decision.
SearchOutcome search(const ShopState& state, const DecisionPoint& decision,
                     const PriorFn& prior_fn, const RolloutFn& rollout_fn,
                     const SearchParams& params);

// Indented per-node statistics dump for debugging.
void print_tree(std::ostream& out, const SearchNode& node,
                const SearchStats& stats, int max_depth = 2);

}  // namespace djss

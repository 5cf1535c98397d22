#include "djss/mcts.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace djss {

void SearchStats::record(double tardiness, double robustness) {
  if (samples == 0) {
    t_min = t_max = tardiness;
    r_min = r_max = robustness;
  } else {
    t_min = std::min(t_min, tardiness);
    t_max = std::max(t_max, tardiness);
    r_min = std::min(r_min, robustness);
    r_max = std::max(r_max, robustness);
  }
  ++samples;
}

double SearchStats::scale_tardiness(double mean) const {
  if (samples == 0 || t_max == t_min) return 0.5;
  return std::clamp((t_max - mean) / (t_max - t_min), 0.0, 1.0);
}

double SearchStats::scale_robustness(double mean) const {
  if (samples == 0 || r_max == r_min) return 0.5;
  return std::clamp((mean - r_min) / (r_max - r_min), 0.0, 1.0);
}

double SearchEdge::q(const SearchStats& stats) const {
  if (n == 0) return 0.5;
  return stats.scale_tardiness(sum_tardiness / static_cast<double>(n));
}

double SearchEdge::rho(const SearchStats& stats) const {
  if (n == 0) return 0.5;
  return stats.scale_robustness(sum_robustness / static_cast<double>(n));
}

double SearchEdge::blended(const SearchStats& stats, double alpha) const {
  return alpha * q(stats) + (1.0 - alpha) * rho(stats);
}

SearchEdge& select_child(SearchNode& node, const SearchStats& stats,
                         const SearchParams& params) {
  if (node.edges.empty())
    throw std::logic_error("select_child on a node without expanded children");
  double sqrt_parent = std::sqrt(static_cast<double>(node.visits));
  SearchEdge* best = nullptr;
  double best_score = 0.0;
  for (auto& edge : node.edges) {
    double score = edge.blended(stats, params.alpha) +
                   params.c * edge.prior * sqrt_parent /
                       (1.0 + static_cast<double>(edge.n));
    if (!best || score > best_score ||
        (score == best_score && edge.action.job_id < best->action.job_id)) {
      best = &edge;
      best_score = score;
    }
  }
  return *best;
}

SearchTree::SearchTree(ShopState lookahead_state, PriorFn prior_fn,
                       RolloutFn rollout_fn, SearchParams params, Time origin)
    : prior_fn_(std::move(prior_fn)),
      rollout_fn_(std::move(rollout_fn)),
      params_(params),
      origin_(origin) {
  root_ = make_node(std::move(lookahead_state));
}

SearchTree::SearchTree(std::unique_ptr<SearchNode> reused_root,
                       SearchStats carried, PriorFn prior_fn,
                       RolloutFn rollout_fn, SearchParams params, Time origin)
    : root_(std::move(reused_root)),
      stats_(carried),
      prior_fn_(std::move(prior_fn)),
      rollout_fn_(std::move(rollout_fn)),
      params_(params),
      origin_(origin) {
  if (!root_) throw std::invalid_argument("reused root is null");
}

std::unique_ptr<SearchNode> SearchTree::make_node(ShopState&& state) {
  auto node = std::make_unique<SearchNode>();
  node->state = std::move(state);
  DecisionPoint dp;
  if (advance(node->state, dp)) {
    auto prior = prior_fn_(dp, node->state);
    assert(prior.size() == dp.candidates.size());
    node->pending.reserve(dp.candidates.size());
    for (std::size_t i = 0; i < dp.candidates.size(); ++i)
      node->pending.emplace_back(dp.candidates[i], prior[i]);
    std::stable_sort(node->pending.begin(), node->pending.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    node->decision = std::move(dp);
  }
  return node;
}

SearchEdge& SearchTree::expand_next(SearchNode& node) {
  auto [action, prior] = node.pending[node.next_pending++];
  ShopState child_state = node.state;
  apply_action(child_state, *node.decision, action);
  SearchEdge edge;
  edge.action = action;
  edge.prior = prior;
  edge.child = make_node(std::move(child_state));
  node.edges.push_back(std::move(edge));
  return node.edges.back();
}

RolloutResult SearchTree::evaluate(SearchNode& node) {
  if (node.terminal()) {
    if (!node.terminal_outcome) node.terminal_outcome = rollout_fn_(node.state);
    ++node.evals;
    return *node.terminal_outcome;
  }
  ++node.evals;
  return rollout_fn_(node.state);
}

bool SearchTree::step() {
  if (root_->visits >= params_.n_mcts) return false;
  if (root_->terminal())
    throw std::logic_error("search started on a terminal state");

  path_.clear();
  SearchNode* node = root_.get();
  RolloutResult outcome;
  for (;;) {
    if (node->terminal()) {
      outcome = evaluate(*node);
      break;
    }
    if (!node->fully_expanded()) {
      SearchEdge& edge = expand_next(*node);
      path_.push_back(&edge);
      outcome = evaluate(*edge.child);
      break;
    }
    SearchEdge& edge = select_child(*node, stats_, params_);
    path_.push_back(&edge);
    node = edge.child.get();
  }

  stats_.record(outcome.tardiness, outcome.robustness);
  ++root_->visits;
  for (SearchEdge* edge : path_) {
    ++edge->n;
    edge->sum_tardiness += outcome.tardiness;
    edge->sum_robustness += outcome.robustness;
    ++edge->child->visits;
  }
  ++executed_iterations_;
  return true;
}

void SearchTree::run() {
  while (step()) {
  }
}

std::vector<double> SearchTree::visit_distribution() const {
  const auto& candidates = root_->decision->candidates;
  std::vector<double> pi(candidates.size(), 0.0);
  long total = 0;
  for (const auto& edge : root_->edges) total += edge.n;
  if (total == 0) return pi;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (const auto& edge : root_->edges)
      if (edge.action == candidates[i])
        pi[i] = static_cast<double>(edge.n) / static_cast<double>(total);
  return pi;
}

const Operation& SearchTree::best_action() const {
  if (root_->edges.empty())
    throw std::logic_error("best_action before any expansion");
  const SearchEdge* best = nullptr;
  for (const auto& edge : root_->edges) {
    if (edge.n == 0) continue;
    bool better;
    if (!best) {
      better = true;
    } else if (params_.selection == SearchParams::Selection::visit_count) {
      better = edge.n > best->n ||
               (edge.n == best->n && edge.action.job_id < best->action.job_id);
    } else {
      double a = edge.blended(stats_, params_.alpha);
      double b = best->blended(stats_, params_.alpha);
      better = a > b || (a == b && edge.action.job_id < best->action.job_id);
    }
    if (better) best = &edge;
  }
  if (!best) throw std::logic_error("best_action with no visited edge");
  return best->action;
}

std::unique_ptr<SearchNode> SearchTree::take_subtree(const Operation& executed) {
  for (auto& edge : root_->edges)
    if (edge.action == executed) return std::move(edge.child);
  return nullptr;
}

SearchOutcome search(const ShopState& state, const DecisionPoint& decision,
                     const PriorFn& prior_fn, const RolloutFn& rollout_fn,
                     const SearchParams& params) {
  if (decision.candidates.empty())
    throw std::invalid_argument("search: empty candidate set");
  if (decision.candidates.size() == 1)
    return SearchOutcome{{1.0}, decision.candidates.front(), 0};
  SearchTree tree(clone_for_lookahead(state), prior_fn, rollout_fn, params,
                  state.clock);
  if (!tree.root().decision || !(tree.root().decision->clock == decision.clock &&
                                 tree.root().decision->machine_id == decision.machine_id &&
                                 tree.root().decision->candidates == decision.candidates))
    throw std::invalid_argument("search: decision does not match the state");
  tree.run();
  SearchOutcome out;
  out.pi = tree.visit_distribution();
  out.chosen = tree.best_action();
  out.iterations = tree.executed_iterations();
  return out;
}

void print_tree(std::ostream& out, const SearchNode& node,
                const SearchStats& stats, int max_depth) {
  struct Walker {
    std::ostream& out;
    const SearchStats& stats;
    int max_depth;
    void walk(const SearchNode& n, int depth) {
      std::string pad(2 * depth, ' ');
      if (n.terminal()) {
        out << pad << "terminal visits=" << n.visits << " evals=" << n.evals << "\n";
        return;
      }
      out << pad << "node clock=" << n.state.clock
          << " machine=" << n.decision->machine_id << " visits=" << n.visits
          << " evals=" << n.evals << "\n";
      for (const auto& e : n.edges) {
        out << pad << "  job " << e.action.job_id << " op " << e.action.index
            << " p=" << e.prior << " n=" << e.n << " q=" << e.q(stats)
            << " rho=" << e.rho(stats) << "\n";
        if (depth + 1 <= max_depth && e.child) walk(*e.child, depth + 1);
      }
    }
  };
  Walker{out, stats, max_depth}.walk(node, 0);
}

}  // namespace djss

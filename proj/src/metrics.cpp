#include "djss/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace djss {

TardinessResult tardiness(const GanttRecord& gantt, const JobStore& jobs,
                          const std::vector<int>& job_ids, bool weighted) {
  // completion time = end of the route's last op, if present
  std::vector<Time> completion(jobs.size(), -1);
  for (const auto& machine : gantt.per_machine) {
    for (const auto& e : machine) {
      const Job& job = jobs[e.job_id];
      if (e.op_index == job.op_count() - 1)
        completion[e.job_id] = std::max(completion[e.job_id], e.end);
    }
  }

  TardinessResult result;
  result.per_job.reserve(job_ids.size());
  double sum = 0.0;
  for (int id : job_ids) {
    if (id < 0 || id >= static_cast<int>(jobs.size()) || completion[id] < 0)
      throw std::invalid_argument("tardiness: job " + std::to_string(id) +
                                  " is not completed in this gantt");
    const Job& job = jobs[id];
    double late = std::max(0.0, static_cast<double>(completion[id]) - job.due_date);
    double wt = (weighted ? job.weight : 1.0) * late;
    result.per_job.emplace_back(id, wt);
    sum += wt;
  }
  result.mean = job_ids.empty() ? 0.0 : sum / static_cast<double>(job_ids.size());
  return result;
}

double ledger_mean_tardiness(const ShopState& state) {
  if (state.completions.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [id, finish] : state.completions) {
    const Job& job = state.job(id);
    sum += job.weight * std::max(0.0, static_cast<double>(finish) - job.due_date);
  }
  return sum / static_cast<double>(state.completions.size());
}

double idleness_weight(double t, double beta) {
  return std::min(0.0, t / beta - 1.0);
}

namespace {

// Antiderivative of t/beta - 1 (valid on [0, beta], where the weight is live).
double primitive(double t, double beta) { return t * t / (2.0 * beta) - t; }

}  // namespace

RobustnessResult robustness(const GanttRecord& gantt, double beta, Time origin) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");

  // Window of interest, relative to origin.
  double window = static_cast<double>(std::max<Time>(gantt.horizon - origin, 0));
  window = std::min(window, beta);

  RobustnessResult result;
  result.horizon_used = origin + static_cast<Time>(std::llround(window));
  if (window <= 0.0) return result;

  for (const auto& machine : gantt.per_machine) {
    double cursor = 0.0;  // next uncovered offset
    for (const auto& e : machine) {
      if (cursor >= window) break;
      if (e.end <= origin) continue;
      double start = std::max(0.0, static_cast<double>(e.start - origin));
      double end = std::min(window, static_cast<double>(e.end - origin));
      if (start > cursor)
        result.value += primitive(std::min(start, window), beta) - primitive(cursor, beta);
      cursor = std::max(cursor, end);
    }
    if (cursor < window)
      result.value += primitive(window, beta) - primitive(cursor, beta);
  }
  return result;
}

}  // namespace djss

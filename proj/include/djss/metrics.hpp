#pragma once

#include <utility>
#include <vector>

#include "djss/gantt.hpp"
#include "djss/job.hpp"
#include "djss/shop.hpp"

namespace djss {

struct TardinessResult {
  std::vector<std::pair<int, double>> per_job;  // (job_id, weighted tardiness)
  double mean = 0.0;
};

// Weighted tardiness of `job_ids`, with completion times read off the gantt.
// Every listed job must have its final operation scheduled; otherwise this
// throws std::invalid_argument. With weighted=false all weights count as 1.
TardinessResult tardiness(const GanttRecord& gantt, const JobStore& jobs,
                          const std::vector<int>& job_ids, bool weighted);

// Mean weighted tardiness over a state's completion ledger (0 if empty).
double ledger_mean_tardiness(const ShopState& state);

// Penalty density for idleness at offset t from the decision origin:
// min(0, t / beta - 1). Zero from beta onward.
double idleness_weight(double t, double beta);

struct RobustnessResult {
  double value = 0.0;    // total penalty, <= 0
  Time horizon_used = 0; // absolute end of the integration window
};

// Integrates idleness_weight over every machine's idle time within
// [origin, min(makespan, origin + beta)]. Machines with no work at all count
// as idle throughout. Exact closed form, no discretization.
RobustnessResult robustness(const GanttRecord& gantt, double beta, Time origin);

}  // namespace djss

#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "djss/gantt.hpp"
#include "djss/instance.hpp"
#include "djss/job.hpp"

namespace djss {

struct MachineState {
  int machine_id = -1;
  std::optional<Operation> busy;
  Time busy_until = 0;                // meaningful while busy
  std::vector<Operation> buffer;      // waiting ops, ascending job_id
  std::int64_t buffered_work = 0;     // total proc_time in buffer

  bool idle() const { return !busy.has_value(); }
};

// A machine wants work: pick one of candidates (the machine's buffer).
struct DecisionPoint {
  Time clock = 0;
  int machine_id = -1;
  std::vector<Operation> candidates;
};

// Full simulator state. Copyable; copies share the immutable JobStore and,
// unless detached, the arrival stream.
struct ShopState {
  Time clock = 0;
  std::vector<MachineState> machines;
  std::shared_ptr<JobStore> store;
  std::shared_ptr<ArrivalStream> arrivals;   // null: no future arrivals
  std::vector<std::pair<int, Time>> completions;  // (job_id, time) since birth
  GanttRecord gantt;                          // executed ops since birth
  long quota = -1;        // stop once jobs 0..quota-1 completed; -1: run dry
  long quota_done = 0;    // completions counting toward quota
  bool auto_dispatch_singletons = true;

  const Job& job(int job_id) const { return (*store)[job_id]; }

  int live_op_count() const {
    int n = 0;
    for (const auto& m : machines) {
      n += static_cast<int>(m.buffer.size());
      if (m.busy) ++n;
    }
    return n;
  }
};

ShopState make_shop(int machine_count, std::shared_ptr<ArrivalStream> arrivals,
                    long quota, bool auto_dispatch_singletons = true);

// Runs events forward until a machine needs an explicit decision, or the end
// condition (quota reached, or no events left) is hit. Fills `out` and
// returns true on a decision; returns false at simulation end.
bool advance(ShopState& state, DecisionPoint& out);

// Convenience wrapper for the common call pattern.
std::optional<DecisionPoint> advance(ShopState& state);

// Starts `chosen` on the decision's machine at the current clock. The
// decision must match the live state; throws std::invalid_argument if not.
void apply_action(ShopState& state, const DecisionPoint& decision,
                  const Operation& chosen);

// Deterministic what-if copy: drops future arrivals, starts fresh completion
// and gantt records (in-process ops are kept, with their true start times),
// and runs until drained rather than to a quota.
ShopState clone_for_lookahead(const ShopState& state);

}  // namespace djss

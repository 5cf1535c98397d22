#include "djss/shop.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace djss {

namespace {

constexpr Time kNever = std::numeric_limits<Time>::max();

void insert_sorted(MachineState& m, const Operation& op) {
  auto pos = std::lower_bound(
      m.buffer.begin(), m.buffer.end(), op,
      [](const Operation& a, const Operation& b) { return a.job_id < b.job_id; });
  m.buffer.insert(pos, op);
  m.buffered_work += op.proc_time;
}

void start_op(ShopState& state, MachineState& m, const Operation& op) {
  m.busy = op;
  m.busy_until = state.clock + op.proc_time;
  state.gantt.add(m.machine_id,
                  GanttEntry{op.job_id, op.index, state.clock, m.busy_until});
}

// Finishes the op on m at the current clock: either forwards the job to its
// next machine's buffer or records the completion.
void finish_op(ShopState& state, MachineState& m) {
  Operation done = *m.busy;
  m.busy.reset();
  const Job& job = state.job(done.job_id);
  if (done.index + 1 < job.op_count()) {
    const Operation& next = job.route[done.index + 1];
    insert_sorted(state.machines[next.machine_id], next);
  } else {
    state.completions.emplace_back(done.job_id, state.clock);
    if (state.quota >= 0 && done.job_id < state.quota) ++state.quota_done;
  }
}

void admit_job(ShopState& state, Job&& job) {
  const Operation first = job.route.front();
  state.store->add(std::move(job));
  insert_sorted(state.machines[first.machine_id], first);
}

}  // namespace

ShopState make_shop(int machine_count, std::shared_ptr<ArrivalStream> arrivals,
                    long quota, bool auto_dispatch_singletons) {
  ShopState state;
  state.machines.resize(machine_count);
  for (int i = 0; i < machine_count; ++i) state.machines[i].machine_id = i;
  state.store = std::make_shared<JobStore>();
  state.arrivals = std::move(arrivals);
  state.gantt = GanttRecord(machine_count);
  state.quota = quota;
  state.auto_dispatch_singletons = auto_dispatch_singletons;
  return state;
}

bool advance(ShopState& state, DecisionPoint& out) {
  for (;;) {
    if (state.quota >= 0 && state.quota_done >= state.quota) return false;

    // Idle machines with work pending decide before time moves on.
    bool dispatched = false;
    for (auto& m : state.machines) {
      if (!m.idle() || m.buffer.empty()) continue;
      if (state.auto_dispatch_singletons && m.buffer.size() == 1) {
        Operation only = m.buffer.front();
        m.buffer.clear();
        m.buffered_work -= only.proc_time;
        start_op(state, m, only);
        dispatched = true;
        continue;
      }
      out.clock = state.clock;
      out.machine_id = m.machine_id;
      out.candidates = m.buffer;
      return true;
    }
    if (dispatched) continue;  // singleton starts may have freed successors

    Time next_completion = kNever;
    for (const auto& m : state.machines)
      if (m.busy) next_completion = std::min(next_completion, m.busy_until);

    Time next_arrival = kNever;
    if (state.arrivals && !state.arrivals->exhausted())
      next_arrival = state.arrivals->peek().release_time;

    Time next_event = std::min(next_completion, next_arrival);
    if (next_event == kNever) return false;  // drained

    state.clock = std::max(state.clock, next_event);
    for (auto& m : state.machines)
      if (m.busy && m.busy_until == next_event) finish_op(state, m);
    while (next_arrival != kNever && state.arrivals->peek().release_time <= next_event) {
      admit_job(state, state.arrivals->pop());
      if (state.arrivals->exhausted()) break;
    }
  }
}

std::optional<DecisionPoint> advance(ShopState& state) {
  DecisionPoint dp;
  if (advance(state, dp)) return dp;
  return std::nullopt;
}

void apply_action(ShopState& state, const DecisionPoint& decision,
                  const Operation& chosen) {
  if (decision.clock != state.clock)
    throw std::invalid_argument("stale decision point");
  if (decision.machine_id < 0 || decision.machine_id >= static_cast<int>(state.machines.size()))
    throw std::invalid_argument("decision references unknown machine");
  MachineState& m = state.machines[decision.machine_id];
  if (!m.idle()) throw std::invalid_argument("machine is already busy");

  auto in_buffer = std::find(m.buffer.begin(), m.buffer.end(), chosen);
  if (in_buffer == m.buffer.end() ||
      std::find(decision.candidates.begin(), decision.candidates.end(), chosen) ==
          decision.candidates.end())
    throw std::invalid_argument("chosen operation is not a live candidate");

  m.buffer.erase(in_buffer);
  m.buffered_work -= chosen.proc_time;
  start_op(state, m, chosen);
}

ShopState clone_for_lookahead(const ShopState& state) {
  ShopState copy = state;
  copy.arrivals.reset();
  copy.completions.clear();
  copy.quota = -1;
  copy.quota_done = 0;
  copy.gantt = GanttRecord(static_cast<int>(state.machines.size()));
  for (const auto& m : state.machines)
    if (m.busy)
      copy.gantt.add(m.machine_id,
                     GanttEntry{m.busy->job_id, m.busy->index,
                                m.busy_until - m.busy->proc_time, m.busy_until});
  return copy;
}

}  // namespace djss

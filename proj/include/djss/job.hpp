#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <vector>

namespace djss {

// Simulation time in integer ticks.
using Time = std::int64_t;

// One step of a job's route: occupy machine_id for proc_time ticks.
struct Operation {
  int job_id = -1;
  int index = 0;
  int machine_id = -1;
  int proc_time = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct Job {
  int job_id = -1;
  Time release_time = 0;
  double due_date = 0.0;
  double weight = 1.0;
  std::vector<Operation> route;

  int op_count() const { return static_cast<int>(route.size()); }

  int total_proc_time() const {
    int sum = 0;
    for (const auto& op : route) sum += op.proc_time;
    return sum;
  }

  // Work of route[from_index..end], including from_index itself.
  int remaining_work(int from_index) const {
    assert(from_index >= 0 && from_index < op_count());
    int sum = 0;
    for (int i = from_index; i < op_count(); ++i) sum += route[i].proc_time;
    return sum;
  }

  // Work of route[0..index], including index itself.
  int work_through(int index) const {
    assert(index >= 0 && index < op_count());
    int sum = 0;
    for (int i = 0; i <= index; ++i) sum += route[i].proc_time;
    return sum;
  }
};

// Append-only arena of released jobs, shared between a live shop and any
// lookahead copies of it. job_id doubles as the position in the arena.
class JobStore {
 public:
  int add(Job job) {
    int id = static_cast<int>(jobs_.size());
    assert(job.job_id == id);
    jobs_.push_back(std::move(job));
    return id;
  }

  const Job& operator[](int job_id) const {
    assert(job_id >= 0 && job_id < static_cast<int>(jobs_.size()));
    return jobs_[job_id];
  }

  std::size_t size() const { return jobs_.size(); }

 private:
  std::deque<Job> jobs_;
};

}  // namespace djss

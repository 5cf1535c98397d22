#include "djss/gantt.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace djss {

namespace {

std::string describe(int machine_id, const GanttEntry& e) {
  std::ostringstream os;
  os << "machine " << machine_id << " job " << e.job_id << " op " << e.op_index
     << " [" << e.start << ", " << e.end << ")";
  return os.str();
}

}  // namespace

std::optional<std::string> validate_gantt(const GanttRecord& gantt,
                                          const JobStore& jobs) {
  // per-machine: ordered, non-overlapping, on the right machine, right length
  for (int m = 0; m < gantt.machine_count(); ++m) {
    Time prev_end = std::numeric_limits<Time>::min();
    for (const auto& e : gantt.per_machine[m]) {
      if (e.job_id < 0 || e.job_id >= static_cast<int>(jobs.size()))
        return "unknown job in " + describe(m, e);
      const Job& job = jobs[e.job_id];
      if (e.op_index < 0 || e.op_index >= job.op_count())
        return "unknown op in " + describe(m, e);
      const Operation& op = job.route[e.op_index];
      if (op.machine_id != m)
        return "op scheduled on wrong machine: " + describe(m, e);
      if (e.end - e.start != op.proc_time)
        return "wrong duration: " + describe(m, e);
      if (e.start < prev_end)
        return "overlap on machine " + std::to_string(m) + " at " + describe(m, e);
      prev_end = e.end;
    }
  }

  // per-job: ops in route order, each starting no earlier than its
  // predecessor ends, and no earlier than the release
  std::vector<std::vector<GanttEntry>> by_job(jobs.size());
  for (int m = 0; m < gantt.machine_count(); ++m)
    for (const auto& e : gantt.per_machine[m]) by_job[e.job_id].push_back(e);
  for (auto& entries : by_job) {
    std::sort(entries.begin(), entries.end(),
              [](const GanttEntry& a, const GanttEntry& b) {
                return a.op_index < b.op_index;
              });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const GanttEntry& e = entries[i];
      const Job& job = jobs[e.job_id];
      if (i > 0) {
        if (entries[i - 1].op_index == e.op_index)
          return "op executed twice: " + describe(job.route[e.op_index].machine_id, e);
        if (entries[i - 1].op_index + 1 != e.op_index)
          return "route gap before " + describe(job.route[e.op_index].machine_id, e);
        if (e.start < entries[i - 1].end)
          return "precedence violated at " + describe(job.route[e.op_index].machine_id, e);
      }
      if (e.op_index == 0 && e.start < job.release_time)
        return "job started before release: " + describe(job.route[0].machine_id, e);
    }
  }
  return std::nullopt;
}

void write_gantt_csv(std::ostream& out, const GanttRecord& gantt) {
  out << "machine,job,op,start,end\n";
  for (int m = 0; m < gantt.machine_count(); ++m)
    for (const auto& e : gantt.per_machine[m])
      out << m << ',' << e.job_id << ',' << e.op_index << ',' << e.start << ','
          << e.end << '\n';
}

}  // namespace djss

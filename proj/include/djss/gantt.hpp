#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "djss/job.hpp"

namespace djss {

struct GanttEntry {
  int job_id = -1;
  int op_index = 0;
  Time start = 0;
  Time end = 0;

  friend bool operator==(const GanttEntry&, const GanttEntry&) = default;
};

// Realized schedule: per machine, the executed intervals in start order.
struct GanttRecord {
  std::vector<std::vector<GanttEntry>> per_machine;
  Time horizon = 0;  // max end over all entries

  explicit GanttRecord(int machine_count = 0) : per_machine(machine_count) {}

  int machine_count() const { return static_cast<int>(per_machine.size()); }

  void add(int machine_id, const GanttEntry& entry) {
    per_machine[machine_id].push_back(entry);
    if (entry.end > horizon) horizon = entry.end;
  }

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& m : per_machine) n += m.size();
    return n;
  }

  friend bool operator==(const GanttRecord&, const GanttRecord&) = default;
};

// Checks machine non-overlap, route/machine agreement, duration, and
// operation precedence per job. Returns the first violation, or nullopt.
std::optional<std::string> validate_gantt(const GanttRecord& gantt,
                                          const JobStore& jobs);

// CSV with header machine,job,op,start,end.
void write_gantt_csv(std::ostream& out, const GanttRecord& gantt);

}  // namespace djss

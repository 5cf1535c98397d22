#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "djss/job.hpp"

namespace djss {

// Parameters of the rolling job stream fed into a shop.
struct InstanceParams {
  int machine_count = 10;
  double utilization = 0.85;
  int op_count_min = 2;
  int op_count_max = 10;
  int proc_time_min = 1;
  int proc_time_max = 99;
  bool weighted = false;  // false: all weights 1; true: {1,2,4} at 20/60/20
  double due_date_factor = 4.0;

  // Expected total processing time of one job.
  double mean_total_proc_time() const;
  // Poisson arrival rate that loads machine_count machines to `utilization`.
  double arrival_rate() const;

  void validate() const;  // throws std::invalid_argument

  friend bool operator==(const InstanceParams&, const InstanceParams&) = default;
};

// Stable hash of the generator configuration, embedded in exported instances.
std::uint64_t config_hash(const InstanceParams& params);

// Lazy stream of arriving jobs. Either generated on demand from a seeded RNG
// or replayed from a fixed list (imports, tests). Copyable; a copy replays
// the same future independently.
class ArrivalStream {
 public:
  ArrivalStream(const InstanceParams& params, std::uint64_t seed);
  explicit ArrivalStream(std::vector<Job> jobs);  // replay, never refills

  // Next job to arrive. Generated streams always have one; replay streams
  // must be checked with exhausted() first.
  const Job& peek();
  Job pop();
  bool exhausted();

  bool generated() const { return params_.has_value(); }
  std::uint64_t seed() const { return seed_; }
  const InstanceParams& params() const;

 private:
  void refill();

  std::optional<InstanceParams> params_;
  std::uint64_t seed_ = 0;
  std::mt19937_64 rng_;
  double arrival_clock_ = 0.0;
  int next_job_id_ = 0;
  std::deque<Job> pending_;
};

std::shared_ptr<ArrivalStream> generate_instance(std::uint64_t seed,
                                                 const InstanceParams& params);

// Fingerprint of the first `job_count` arrivals; used to confirm that paired
// runs really saw the same instance. Does not disturb `stream`.
std::uint64_t instance_fingerprint(const ArrivalStream& stream, int job_count);

// Plain-text instance exchange format. Header line carries machine count,
// seed and config hash; one line per job afterwards.
void export_instance(std::ostream& out, const ArrivalStream& stream, int job_count);

struct ImportedInstance {
  int machine_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t config = 0;
  std::vector<Job> jobs;
};

ImportedInstance import_instance(std::istream& in);  // throws on malformed input

}  // namespace djss

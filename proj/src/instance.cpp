#include "djss/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace djss {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a_double(std::uint64_t h, double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  return fnv1a(h, bits);
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;

}  // namespace

double InstanceParams::mean_total_proc_time() const {
  double mean_ops = 0.5 * (op_count_min + op_count_max);
  double mean_proc = 0.5 * (proc_time_min + proc_time_max);
  return mean_ops * mean_proc;
}

double InstanceParams::arrival_rate() const {
  return machine_count * utilization / mean_total_proc_time();
}

void InstanceParams::validate() const {
  if (machine_count < 1)
    throw std::invalid_argument("machine_count must be at least 1");
  if (!(utilization > 0.0 && utilization < 1.0))
    throw std::invalid_argument("utilization must lie in (0, 1)");
  if (op_count_min < 1 || op_count_max < op_count_min)
    throw std::invalid_argument("bad operation count range");
  if (op_count_max > machine_count)
    throw std::invalid_argument("op_count_max exceeds machine_count; routes do not revisit machines");
  if (proc_time_min < 1 || proc_time_max < proc_time_min)
    throw std::invalid_argument("bad processing time range");
  if (due_date_factor <= 0.0)
    throw std::invalid_argument("due_date_factor must be positive");
}

std::uint64_t config_hash(const InstanceParams& p) {
  std::uint64_t h = kFnvOffset;
  h = fnv1a(h, static_cast<std::uint64_t>(p.machine_count));
  h = fnv1a_double(h, p.utilization);
  h = fnv1a(h, static_cast<std::uint64_t>(p.op_count_min));
  h = fnv1a(h, static_cast<std::uint64_t>(p.op_count_max));
  h = fnv1a(h, static_cast<std::uint64_t>(p.proc_time_min));
  h = fnv1a(h, static_cast<std::uint64_t>(p.proc_time_max));
  h = fnv1a(h, p.weighted ? 1 : 0);
  h = fnv1a_double(h, p.due_date_factor);
  return h;
}

ArrivalStream::ArrivalStream(const InstanceParams& params, std::uint64_t seed)
    : params_(params), seed_(seed), rng_(seed) {
  params.validate();
}

ArrivalStream::ArrivalStream(std::vector<Job> jobs) {
  for (auto& j : jobs) pending_.push_back(std::move(j));
  next_job_id_ = static_cast<int>(pending_.size());
}

void ArrivalStream::refill() {
  const InstanceParams& p = *params_;
  std::exponential_distribution<double> interarrival(p.arrival_rate());
  std::uniform_int_distribution<int> op_count(p.op_count_min, p.op_count_max);
  std::uniform_int_distribution<int> proc_time(p.proc_time_min, p.proc_time_max);

  arrival_clock_ += interarrival(rng_);

  Job job;
  job.job_id = next_job_id_++;
  job.release_time = std::llround(arrival_clock_);

  int ops = op_count(rng_);
  // Route visits `ops` distinct machines, uniformly ordered.
  std::vector<int> ids(p.machine_count);
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = 0; i < ops; ++i) {
    std::uniform_int_distribution<int> pick(i, p.machine_count - 1);
    std::swap(ids[i], ids[pick(rng_)]);
    Operation op;
    op.job_id = job.job_id;
    op.index = i;
    op.machine_id = ids[i];
    op.proc_time = proc_time(rng_);
    job.route.push_back(op);
  }

  if (p.weighted) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng_);
    job.weight = x < 0.2 ? 1.0 : (x < 0.8 ? 2.0 : 4.0);
  } else {
    job.weight = 1.0;
  }
  job.due_date = static_cast<double>(job.release_time) +
                 p.due_date_factor * job.total_proc_time();
  pending_.push_back(std::move(job));
}

const Job& ArrivalStream::peek() {
  if (pending_.empty()) {
    if (!generated()) throw std::runtime_error("arrival stream exhausted");
    refill();
  }
  return pending_.front();
}

Job ArrivalStream::pop() {
  peek();
  Job j = std::move(pending_.front());
  pending_.pop_front();
  return j;
}

bool ArrivalStream::exhausted() {
  return pending_.empty() && !generated();
}

const InstanceParams& ArrivalStream::params() const {
  if (!params_) throw std::runtime_error("replay stream has no generator params");
  return *params_;
}

std::shared_ptr<ArrivalStream> generate_instance(std::uint64_t seed,
                                                 const InstanceParams& params) {
  return std::make_shared<ArrivalStream>(params, seed);
}

std::uint64_t instance_fingerprint(const ArrivalStream& stream, int job_count) {
  ArrivalStream copy = stream;  // private future, original untouched
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < job_count && !copy.exhausted(); ++i) {
    Job j = copy.pop();
    h = fnv1a(h, static_cast<std::uint64_t>(j.release_time));
    h = fnv1a_double(h, j.due_date);
    h = fnv1a_double(h, j.weight);
    for (const auto& op : j.route) {
      h = fnv1a(h, static_cast<std::uint64_t>(op.machine_id));
      h = fnv1a(h, static_cast<std::uint64_t>(op.proc_time));
    }
  }
  return h;
}

void export_instance(std::ostream& out, const ArrivalStream& stream, int job_count) {
  ArrivalStream copy = stream;
  std::uint64_t cfg = copy.generated() ? config_hash(copy.params()) : 0;
  int machines = 0;
  std::vector<Job> jobs;
  for (int i = 0; i < job_count && !copy.exhausted(); ++i) {
    jobs.push_back(copy.pop());
    for (const auto& op : jobs.back().route)
      machines = std::max(machines, op.machine_id + 1);
  }
  if (copy.generated()) machines = copy.params().machine_count;

  out << "machines " << machines << " seed " << stream.seed() << " config "
      << cfg << " jobs " << jobs.size() << "\n";
  out.precision(17);
  for (const auto& j : jobs) {
    out << j.release_time << ", " << j.due_date << ", " << j.weight << ",";
    for (const auto& op : j.route) out << " " << op.machine_id << ":" << op.proc_time;
    out << "\n";
  }
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw std::runtime_error("malformed instance file: " + what);
}

}  // namespace

ImportedInstance import_instance(std::istream& in) {
  ImportedInstance inst;
  std::string line;
  if (!std::getline(in, line)) malformed("missing header");
  {
    std::istringstream hs(line);
    std::string kw_machines, kw_seed, kw_config, kw_jobs;
    std::size_t job_count = 0;
    hs >> kw_machines >> inst.machine_count >> kw_seed >> inst.seed >>
        kw_config >> inst.config >> kw_jobs >> job_count;
    if (!hs || kw_machines != "machines" || kw_seed != "seed" ||
        kw_config != "config" || kw_jobs != "jobs")
      malformed("bad header: " + line);
    inst.jobs.reserve(job_count);
  }

  int id = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    Job job;
    job.job_id = id;
    if (!(ls >> job.release_time >> job.due_date >> job.weight))
      malformed("bad job line: " + line);
    std::string pair;
    int index = 0;
    while (ls >> pair) {
      auto colon = pair.find(':');
      if (colon == std::string::npos) malformed("bad op token: " + pair);
      Operation op;
      op.job_id = id;
      op.index = index++;
      try {
        op.machine_id = std::stoi(pair.substr(0, colon));
        op.proc_time = std::stoi(pair.substr(colon + 1));
      } catch (const std::exception&) {
        malformed("bad op token: " + pair);
      }
      if (op.machine_id < 0 || op.machine_id >= inst.machine_count)
        malformed("machine id out of range: " + pair);
      if (op.proc_time < 1) malformed("non-positive processing time: " + pair);
      job.route.push_back(op);
    }
    if (job.route.empty()) malformed("job with empty route: " + line);
    inst.jobs.push_back(std::move(job));
    ++id;
  }
  return inst;
}

}  // namespace djss

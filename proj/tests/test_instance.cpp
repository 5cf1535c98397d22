#include <cmath>
#include <set>
#include <sstream>

#include "djss/instance.hpp"
#include "doctest.h"

using namespace djss;

TEST_CASE("arrival rate follows machine load") {
  InstanceParams p;  // 10 machines, u = 0.85, ops U(2,10), proc U(1,99)
  CHECK(p.mean_total_proc_time() == doctest::Approx(300.0));
  CHECK(p.arrival_rate() == doctest::Approx(10 * 0.85 / 300.0));
  CHECK(1.0 / p.arrival_rate() == doctest::Approx(35.2941176).epsilon(1e-6));

  p.utilization = 0.95;
  CHECK(p.arrival_rate() == doctest::Approx(10 * 0.95 / 300.0));
}

TEST_CASE("parameter validation") {
  InstanceParams p;
  CHECK_NOTHROW(p.validate());
  p.utilization = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.utilization = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.utilization = 0.85;
  p.op_count_max = 11;  // would force a machine revisit
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.op_count_max = 10;
  p.proc_time_min = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.proc_time_min = 1;
  p.machine_count = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("same seed reproduces the stream, different seeds do not") {
  InstanceParams p;
  ArrivalStream a(p, 99), b(p, 99), c(p, 100);
  bool all_equal = true;
  for (int i = 0; i < 50; ++i) {
    Job ja = a.pop(), jb = b.pop();
    CHECK(ja.release_time == jb.release_time);
    CHECK(ja.due_date == jb.due_date);
    CHECK(ja.weight == jb.weight);
    REQUIRE(ja.route.size() == jb.route.size());
    for (std::size_t k = 0; k < ja.route.size(); ++k)
      CHECK(ja.route[k] == jb.route[k]);
  }
  CHECK(instance_fingerprint(a, 50) == instance_fingerprint(b, 50));
  CHECK(instance_fingerprint(a, 50) != instance_fingerprint(c, 50));
  (void)all_equal;
}

TEST_CASE("generated jobs match the sampling law") {
  InstanceParams p;
  ArrivalStream stream(p, 7);
  const int n = 10000;
  double op_sum = 0.0, proc_sum = 0.0;
  long proc_count = 0;
  Time prev_release = 0;
  for (int i = 0; i < n; ++i) {
    Job j = stream.pop();
    CHECK(j.job_id == i);
    CHECK(j.release_time >= prev_release);
    prev_release = j.release_time;
    REQUIRE(j.route.size() >= 2);
    REQUIRE(j.route.size() <= 10);
    op_sum += static_cast<double>(j.route.size());
    std::set<int> machines;
    int total = 0;
    for (const auto& op : j.route) {
      CHECK(op.job_id == i);
      CHECK(op.proc_time >= 1);
      CHECK(op.proc_time <= 99);
      CHECK(op.machine_id >= 0);
      CHECK(op.machine_id < 10);
      machines.insert(op.machine_id);
      proc_sum += op.proc_time;
      ++proc_count;
      total += op.proc_time;
    }
    CHECK(machines.size() == j.route.size());  // no revisits
    CHECK(j.weight == 1.0);                    // unweighted objective
    CHECK(j.due_date == doctest::Approx(j.release_time + 4.0 * total));
  }
  CHECK(op_sum / n > 5.9);
  CHECK(op_sum / n < 6.1);
  CHECK(proc_sum / proc_count > 49.0);
  CHECK(proc_sum / proc_count < 51.0);

  // empirical interarrival mean ~ 1/lambda = 35.29
  CHECK(static_cast<double>(prev_release) / n ==
        doctest::Approx(35.2941).epsilon(0.05));
}

TEST_CASE("weighted instances draw 1/2/4 at 20/60/20") {
  InstanceParams p;
  p.weighted = true;
  ArrivalStream stream(p, 11);
  int count1 = 0, count2 = 0, count4 = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    double w = stream.pop().weight;
    if (w == 1.0) ++count1;
    else if (w == 2.0) ++count2;
    else if (w == 4.0) ++count4;
    else FAIL("unexpected weight ", w);
  }
  CHECK(std::abs(count1 / double(n) - 0.2) < 0.03);
  CHECK(std::abs(count2 / double(n) - 0.6) < 0.03);
  CHECK(std::abs(count4 / double(n) - 0.2) < 0.03);
}

TEST_CASE("replay streams pop in order and exhaust") {
  Job j0, j1;
  j0.job_id = 0;
  j0.release_time = 3;
  j0.route.push_back(Operation{0, 0, 0, 5});
  j1.job_id = 1;
  j1.release_time = 8;
  j1.route.push_back(Operation{1, 0, 1, 2});
  ArrivalStream stream({j0, j1});
  CHECK_FALSE(stream.exhausted());
  CHECK(stream.peek().release_time == 3);
  CHECK(stream.pop().job_id == 0);
  CHECK(stream.pop().job_id == 1);
  CHECK(stream.exhausted());
  CHECK_THROWS_AS(stream.peek(), std::runtime_error);
}

TEST_CASE("instance text round-trips") {
  InstanceParams p;
  p.weighted = true;
  ArrivalStream stream(p, 123);
  std::ostringstream out;
  export_instance(out, stream, 25);

  std::istringstream in(out.str());
  ImportedInstance imported = import_instance(in);
  CHECK(imported.machine_count == 10);
  CHECK(imported.seed == 123);
  CHECK(imported.config == config_hash(p));
  REQUIRE(imported.jobs.size() == 25);

  ArrivalStream replay = stream;  // same prefix
  for (int i = 0; i < 25; ++i) {
    Job expect = replay.pop();
    const Job& got = imported.jobs[i];
    CHECK(got.job_id == expect.job_id);
    CHECK(got.release_time == expect.release_time);
    CHECK(got.due_date == doctest::Approx(expect.due_date).epsilon(1e-12));
    CHECK(got.weight == expect.weight);
    REQUIRE(got.route.size() == expect.route.size());
    for (std::size_t k = 0; k < got.route.size(); ++k)
      CHECK(got.route[k] == expect.route[k]);
  }

  // the exported prefix fingerprints identically after a round trip
  ArrivalStream reimported(imported.jobs);
  CHECK(instance_fingerprint(reimported, 25) == instance_fingerprint(stream, 25));
}

TEST_CASE("malformed instance text is rejected") {
  std::istringstream empty("");
  CHECK_THROWS_AS(import_instance(empty), std::runtime_error);
  std::istringstream bad_header("machinez 3 seed 1 config 0 jobs 1\n");
  CHECK_THROWS_AS(import_instance(bad_header), std::runtime_error);
  std::istringstream bad_op("machines 3 seed 1 config 0 jobs 1\n0, 10, 1, 0-5\n");
  CHECK_THROWS_AS(import_instance(bad_op), std::runtime_error);
  std::istringstream bad_machine("machines 3 seed 1 config 0 jobs 1\n0, 10, 1, 7:5\n");
  CHECK_THROWS_AS(import_instance(bad_machine), std::runtime_error);
}

TEST_CASE("config hash tracks parameter changes") {
  InstanceParams a, b;
  CHECK(config_hash(a) == config_hash(b));
  b.utilization = 0.95;
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.weighted = true;
  CHECK(config_hash(a) != config_hash(b));
}

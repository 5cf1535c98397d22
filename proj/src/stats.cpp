#include "djss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace djss {

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double var = 0.0;
  for (double x : xs) var += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(var / static_cast<double>(xs.size() - 1));
  return out;
}

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Exact two-sided p-value: distribution of the positive-rank sum enumerated
// by dynamic programming over doubled midranks (doubling keeps them integer).
double exact_p(const std::vector<double>& ranks, double w_plus) {
  std::vector<long> doubled(ranks.size());
  long total = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    doubled[i] = std::llround(2.0 * ranks[i]);
    total += doubled[i];
  }
  std::vector<double> count(total + 1, 0.0);
  count[0] = 1.0;
  for (long r : doubled)
    for (long s = total; s >= r; --s) count[s] += count[s - r];

  double all = std::ldexp(1.0, static_cast<int>(ranks.size()));  // 2^n subsets
  long w2 = std::llround(2.0 * w_plus);
  double below = 0.0, above = 0.0;
  for (long s = 0; s <= total; ++s) {
    if (s <= w2) below += count[s];
    if (s >= w2) above += count[s];
  }
  return std::min(1.0, 2.0 * std::min(below, above) / all);
}

double approx_p(const std::vector<double>& ranks, double w_plus) {
  double n = static_cast<double>(ranks.size());
  double mean = n * (n + 1.0) / 4.0;
  double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  // tie correction: for each group of t tied ranks, subtract (t^3 - t) / 48
  std::vector<double> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    double t = static_cast<double>(j - i);
    var -= (t * t * t - t) / 48.0;
    i = j;
  }
  if (var <= 0.0) return 1.0;
  double z = (w_plus - mean) / std::sqrt(var);
  return std::min(1.0, 2.0 * normal_sf(std::abs(z)));
}

}  // namespace

double signed_rank_p(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("signed_rank_p: unpaired samples");
  if (a.size() < 6)
    throw std::invalid_argument("signed_rank_p: need at least 6 pairs");

  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) return 1.0;

  // midranks of |d|
  std::vector<std::size_t> order(diffs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(diffs[x]) < std::abs(diffs[y]);
  });
  std::vector<double> rank(diffs.size(), 0.0);
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() &&
           std::abs(diffs[order[j]]) == std::abs(diffs[order[i]]))
      ++j;
    double mid = 0.5 * static_cast<double>(i + j - 1) + 1.0;  // 1-based midrank
    for (std::size_t k = i; k < j; ++k) rank[order[k]] = mid;
    i = j;
  }

  double w_plus = 0.0;
  std::vector<double> ranks(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    ranks[i] = rank[i];
    if (diffs[i] > 0.0) w_plus += rank[i];
  }

  if (diffs.size() <= 25) return exact_p(ranks, w_plus);
  return approx_p(ranks, w_plus);
}

}  // namespace djss

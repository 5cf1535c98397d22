#pragma once

#include <vector>

namespace djss {

struct MeanStd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};

MeanStd mean_std(const std::vector<double>& xs);

// Two-sided Wilcoxon signed-rank p-value for paired samples a, b.
// Zero differences are dropped; ranks are midranks. Exact distribution is
// enumerated for up to 25 nonzero pairs, larger samples use the normal
// approximation with tie correction. All differences zero gives p = 1.
double signed_rank_p(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace djss

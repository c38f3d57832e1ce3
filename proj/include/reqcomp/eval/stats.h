#pragma once

#include <cstddef>
#include <vector>

namespace reqcomp::eval {

// Largest n + m for which the rank-sum test enumerates every assignment.
inline constexpr std::size_t kExactLimit = 12;

struct RankSumResult {
  double w = 0;        // rank sum of sample a (midranks on ties)
  double p = 1;        // two-sided
  bool exact = false;
};

// Two-sided Wilcoxon rank-sum test. Small samples use the exact permutation
// distribution of the midrank sum; larger ones the normal approximation with
// tie-corrected variance and a continuity correction. Throws InvalidArgument
// for an empty sample.
RankSumResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

// P(a > b) + 0.5 P(a = b) over all pairs.
double vargha_delaney_a12(const std::vector<double>& a, const std::vector<double>& b);

double mean(const std::vector<double>& v);
// Linear interpolation between order statistics; q in [0, 1].
double quantile(std::vector<double> v, double q);
inline double median(const std::vector<double>& v) { return quantile(v, 0.5); }

}  // namespace reqcomp::eval

#include "reqcomp/eval/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reqcomp/util/errors.h"

namespace reqcomp::eval {

namespace {

// Midranks of the pooled sample, a first.
std::vector<double> midranks(const std::vector<double>& pooled) {
  std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return pooled[i] < pooled[j]; });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    double r = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

RankSumResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("rank-sum test needs two non-empty samples");
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = a.size(), total = pooled.size();
  auto rank = midranks(pooled);

  RankSumResult out;
  for (std::size_t i = 0; i < n; ++i) out.w += rank[i];
  const double mu = static_cast<double>(n) * static_cast<double>(total + 1) / 2.0;
  const double observed = std::abs(out.w - mu);

  if (total <= kExactLimit) {
    // every n-subset of the pooled ranks is equally likely under the null
    out.exact = true;
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
    std::size_t extreme = 0, count = 0;
    do {
      double w = 0;
      for (std::size_t i = 0; i < total; ++i) {
        if (pick[i]) w += rank[i];
      }
      ++count;
      if (std::abs(w - mu) >= observed - 1e-9) ++extreme;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    out.p = static_cast<double>(extreme) / static_cast<double>(count);
    return out;
  }

  const double nn = static_cast<double>(n), mm = static_cast<double>(b.size()), tt = static_cast<double>(total);
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && sorted[j] == sorted[i]) ++j;
    double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  double sigma = std::sqrt(nn * mm / 12.0 * ((tt + 1) - ties / (tt * (tt - 1))));
  if (sigma == 0) return out;
  double diff = out.w - mu;
  double z = (diff - (diff > 0 ? 0.5 : diff < 0 ? -0.5 : 0.0)) / sigma;
  out.p = std::min(1.0, 2.0 * std::min(normal_cdf(z), normal_cdf(-z)));
  return out;
}

double vargha_delaney_a12(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("A12 needs two non-empty samples");
  double wins = 0;
  for (double x : a) {
    for (double y : b) wins += x > y ? 1.0 : x == y ? 0.5 : 0.0;
  }
  return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace reqcomp::eval

#include "reqcomp/features/features.h"

#include <algorithm>
#include <numeric>

#include "reqcomp/util/text.h"

namespace reqcomp::features {

namespace {

std::u32string decode(std::string_view s) {
  std::u32string out;
  for (std::size_t pos = 0; pos < s.size();) out += next_code_point(s, pos);
  return out;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::u32string x = decode(a), y = decode(b);
  if (x.size() < y.size()) std::swap(x, y);
  // single row, y is the shorter side
  std::vector<std::size_t> row(y.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (x[i - 1] == y[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[y.size()];
}

std::size_t char_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) next_code_point(s, pos);
  return n;
}

double length_ratio(std::size_t a, std::size_t b) {
  std::size_t hi = std::max(a, b);
  if (hi == 0) return 1.0;
  return static_cast<double>(std::min(a, b)) / static_cast<double>(hi);
}

QuantileBuckets::QuantileBuckets(const std::unordered_map<std::string, std::size_t>& counts) {
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::size_t n = ranked.size();
  for (std::size_t r = 0; r < n; ++r) {
    int b = static_cast<int>(std::min<std::size_t>(kBuckets * r / n, kBuckets - 1));
    buckets_.emplace(ranked[r].first, b);
  }
}

int QuantileBuckets::bucket(const std::string& lemma) const {
  auto it = buckets_.find(lemma);
  return it == buckets_.end() ? kBuckets - 1 : it->second;
}

}  // namespace reqcomp::features

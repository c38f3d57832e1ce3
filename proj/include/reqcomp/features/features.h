#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reqcomp::features {

// Unit-cost insert/delete/substitute distance over code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Length in code points.
std::size_t char_count(std::string_view s);

// min(a, b) / max(a, b); 1 when both are zero.
double length_ratio(std::size_t a, std::size_t b);

// Decile buckets over a frequency table. Lemmas are ranked by descending
// count, ties by lemma; rank r of n goes to floor(10 r / n), so bucket 0 holds
// the most frequent tenth. Lemmas not in the table get bucket 9.
class QuantileBuckets {
 public:
  static constexpr int kBuckets = 10;

  QuantileBuckets() = default;
  explicit QuantileBuckets(const std::unordered_map<std::string, std::size_t>& counts);

  int bucket(const std::string& lemma) const;
  std::size_t size() const { return buckets_.size(); }
  const std::unordered_map<std::string, int>& all() const { return buckets_; }

 private:
  std::unordered_map<std::string, int> buckets_;
};

}  // namespace reqcomp::features

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace reqcomp::corpus {

// TF-IDF over a fixed set of tokenised documents: raw term counts times the
// smoothed idf ln((1 + N) / (1 + df)) + 1, each document vector scaled to unit
// Euclidean norm (empty documents keep a zero vector).
class TfidfIndex {
 public:
  TfidfIndex() = default;
  static TfidfIndex build(const std::vector<std::vector<std::string>>& documents);

  std::size_t document_count() const { return vectors_.size(); }
  double idf(std::string_view term) const;
  // Normalised weight of term in document doc (0 when absent).
  double value(std::size_t doc, std::string_view term) const;
  // Sorted by term.
  const std::vector<std::pair<std::string, double>>& vector(std::size_t doc) const { return vectors_[doc]; }
  double norm(std::size_t doc) const;

  // Mean and maximum of the term's weight over all documents; (0, 0) for an
  // empty index.
  std::pair<double, double> mean_max(std::string_view term) const;

  // Every term with its maximum weight over documents, highest first, ties
  // broken by term.
  std::vector<std::pair<std::string, double>> ranked_terms() const;

 private:
  std::size_t n_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
  std::vector<std::vector<std::pair<std::string, double>>> vectors_;
  // term -> (sum over documents, max over documents)
  std::unordered_map<std::string, std::pair<double, double>> stats_;
};

}  // namespace reqcomp::corpus

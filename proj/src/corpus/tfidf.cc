#include "reqcomp/corpus/tfidf.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace reqcomp::corpus {

TfidfIndex TfidfIndex::build(const std::vector<std::vector<std::string>>& documents) {
  TfidfIndex index;
  index.n_ = documents.size();
  std::vector<std::map<std::string, std::size_t>> counts(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (const auto& term : documents[d]) counts[d][term]++;
    for (const auto& [term, _] : counts[d]) index.df_[term]++;
  }
  index.vectors_.resize(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    auto& vec = index.vectors_[d];
    double sq = 0;
    for (const auto& [term, tf] : counts[d]) {
      double w = static_cast<double>(tf) * index.idf(term);
      vec.emplace_back(term, w);
      sq += w * w;
    }
    double norm = std::sqrt(sq);
    if (norm > 0) {
      for (auto& [_, w] : vec) w /= norm;
    }
    for (const auto& [term, w] : vec) {
      auto& s = index.stats_[term];
      s.first += w;
      s.second = std::max(s.second, w);
    }
  }
  return index;
}

double TfidfIndex::idf(std::string_view term) const {
  auto it = df_.find(std::string(term));
  double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(n_)) / (1.0 + df)) + 1.0;
}

double TfidfIndex::value(std::size_t doc, std::string_view term) const {
  const auto& vec = vectors_.at(doc);
  auto it = std::lower_bound(vec.begin(), vec.end(), term,
                             [](const std::pair<std::string, double>& p, std::string_view t) { return p.first < t; });
  return it != vec.end() && it->first == term ? it->second : 0.0;
}

double TfidfIndex::norm(std::size_t doc) const {
  double sq = 0;
  for (const auto& [_, w] : vectors_.at(doc)) sq += w * w;
  return std::sqrt(sq);
}

std::pair<double, double> TfidfIndex::mean_max(std::string_view term) const {
  if (n_ == 0) return {0.0, 0.0};
  auto it = stats_.find(std::string(term));
  if (it == stats_.end()) return {0.0, 0.0};
  return {it->second.first / static_cast<double>(n_), it->second.second};
}

std::vector<std::pair<std::string, double>> TfidfIndex::ranked_terms() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(stats_.size());
  for (const auto& [term, s] : stats_) out.emplace_back(term, s.second);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace reqcomp::corpus

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reqcomp/nlp/lemmatizer.h"

namespace reqcomp::embed {

inline constexpr double kDefaultMatchThreshold = 0.85;

// Static word vectors (GloVe text format: a token followed by D floats per
// line). Keys are lowercased; the first occurrence of a key wins. All-zero
// vectors are skipped.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  // Throws ParseError for malformed lines, inconsistent dimensions, or a file
  // without vectors. A leading "count dimension" header line is accepted.
  static EmbeddingStore load(const std::filesystem::path& path);
  static EmbeddingStore parse(std::string_view text, const std::string& source = "<memory>");

  void add(std::string_view word, std::vector<float> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return index_.size(); }
  bool contains(std::string_view word) const;
  const float* vector(std::string_view word) const;

  // Cosine similarity in [-1, 1]; nullopt when either word is missing.
  // Identical in-vocabulary words give exactly 1.
  std::optional<double> cosine(std::string_view a, std::string_view b) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
  std::vector<double> norms_;
};

// Term matching used for labels and for Accuracy/Coverage: two terms match
// when they share a lemma or when their cosine similarity reaches the
// threshold. Terms missing from the store match on lemma equality only.
class TermMatcher {
 public:
  TermMatcher(const EmbeddingStore* store, const nlp::Lemmatizer* lemmatizer,
              double threshold = kDefaultMatchThreshold);

  bool is_match(std::string_view a, std::string_view b) const;
  bool lemma_match(std::string_view a, std::string_view b) const;
  // Lowercased form plus its noun and verb lemmas.
  std::vector<std::string> lemma_keys(std::string_view word) const;
  double threshold() const { return threshold_; }
  const EmbeddingStore* store() const { return store_; }

 private:
  const EmbeddingStore* store_;
  const nlp::Lemmatizer* lemmatizer_;
  double threshold_;
};

}  // namespace reqcomp::embed

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reqcomp/nlp/types.h"

namespace reqcomp::nlp {

// Most likely tag per word, used both as a tagger feature and by the rule
// fallback. Lookup tries the exact form, then the lowercased form.
class Lexicon {
 public:
  Lexicon() = default;
  static Lexicon load(const std::filesystem::path& path);
  void add(std::string word, std::string tag);
  // Empty view when unknown.
  std::string_view lookup(std::string_view word) const;
  std::size_t size() const { return tags_.size(); }

 private:
  std::unordered_map<std::string, std::string> tags_;
};

struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<std::string> tags;
};

// Reads "word<TAB>TAG" lines with blank lines between sentences.
std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path);

struct TaggerTrainingOptions {
  int iterations = 5;
  std::uint64_t seed = 1;
  // Words seen at least this often with one dominant tag bypass the model.
  int tagdict_min_count = 20;
  double tagdict_min_ratio = 0.97;
  // Averaged weights with smaller magnitude are not written out.
  double prune_below = 1e-3;
};

// Greedy left-to-right averaged-perceptron tagger over Penn Treebank tags.
// Punctuation and plain numbers are tagged by rule before the model runs.
// Without weights the tagger falls back to closed-class lists, the lexicon
// and suffix heuristics.
class PosTagger {
 public:
  explicit PosTagger(Lexicon lexicon = {});

  static PosTagger load(const std::filesystem::path& weights, const std::filesystem::path& lexicon);
  static PosTagger train(const std::vector<TaggedSentence>& corpus, Lexicon lexicon,
                         const TaggerTrainingOptions& options = {});
  void save(const std::filesystem::path& weights) const;

  bool has_model() const { return !weights_.empty(); }
  std::vector<std::string> tag(const std::vector<std::string>& words) const;
  void tag(std::vector<Token>& tokens) const;

  // Tag assigned by rule regardless of the model (punctuation, numbers), or
  // empty when the model decides.
  static std::string rule_tag(std::string_view word);

 private:
  struct Context;
  using Weights = std::vector<std::pair<std::uint8_t, float>>;

  std::vector<std::string> features(const Context& ctx, std::size_t i, std::string_view prev,
                                    std::string_view prev2, bool verb_seen) const;
  std::string fallback_tag(const Context& ctx, std::size_t i, std::string_view prev) const;
  std::string predict(const std::vector<std::string>& feats) const;

  Lexicon lexicon_;
  std::vector<std::string> classes_;
  std::unordered_map<std::string, Weights> weights_;
  std::unordered_map<std::string, std::string> tagdict_;
};

}  // namespace reqcomp::nlp

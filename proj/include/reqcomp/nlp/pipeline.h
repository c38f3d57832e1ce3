#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reqcomp/nlp/lemmatizer.h"
#include "reqcomp/nlp/pos_tagger.h"
#include "reqcomp/nlp/sentence_splitter.h"
#include "reqcomp/nlp/tokenizer.h"
#include "reqcomp/nlp/types.h"

namespace reqcomp::nlp {

struct PipelineAssets {
  std::filesystem::path abbreviations;
  std::filesystem::path tagger_weights;  // optional; rule fallback when absent
  std::filesystem::path lexicon;
  std::filesystem::path lemma_exceptions;
  std::filesystem::path base_forms;

  static PipelineAssets in(const std::filesystem::path& data_dir);
};

// tokenizer -> sentence splitter -> POS tagger -> lemmatizer. Immutable after
// construction; every method is safe to call concurrently.
class Pipeline {
 public:
  Pipeline(Tokenizer tokenizer, PosTagger tagger, Lemmatizer lemmatizer);
  static Pipeline load(const PipelineAssets& assets);
  // Loads from default_data_dir() once and shares the instance.
  static const Pipeline& shared();

  std::vector<Token> tokenize(std::string_view text) const { return tokenizer_.tokenize(text); }
  // Sentence texts in document order.
  std::vector<std::string> split_sentences(std::string_view text) const;
  void pos_tag(std::vector<Token>& tokens) const { tagger_.tag(tokens); }
  std::string lemmatize(std::string_view surface, std::string_view pos) const {
    return lemmatizer_.lemmatize(surface, pos);
  }
  AnnotatedDocument annotate(std::string doc_id, std::string_view text) const;
  // Tags and lemmatizes one sentence's tokens in place.
  void annotate_tokens(std::vector<Token>& tokens) const;

  const Tokenizer& tokenizer() const { return tokenizer_; }
  const PosTagger& tagger() const { return tagger_; }
  const Lemmatizer& lemmatizer() const { return lemmatizer_; }

 private:
  Tokenizer tokenizer_;
  PosTagger tagger_;
  Lemmatizer lemmatizer_;
};

}  // namespace reqcomp::nlp

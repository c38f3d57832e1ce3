#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reqcomp::nlp {

// Penn Treebank word tags plus named punctuation tags (COMMA, PERIOD, ...).
const std::vector<std::string>& tag_set();
bool is_valid_tag(std::string_view tag);
bool is_noun_tag(std::string_view tag);  // NN NNS NNP NNPS
bool is_verb_tag(std::string_view tag);  // VB VBD VBG VBN VBP VBZ
bool is_punct_tag(std::string_view tag);

// A token with byte offsets into the UTF-8 source: source[start, end) == surface.
struct Token {
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string pos;
  std::string lemma;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  // Ordinal of the sentence in the document it was annotated from. Subsets of
  // a document (e.g. a disclosed half) keep the original ordinals.
  std::size_t index = 0;
  std::vector<Token> tokens;
  std::string text;
  std::size_t start = 0;  // offset of text within the document source; token
                          // offsets are document offsets as well

  bool operator==(const Sentence&) const = default;
};

struct AnnotatedDocument {
  std::string doc_id;
  std::vector<Sentence> sentences;
  std::set<std::string> term_set;  // deduplicated lemmas of all tokens

  bool operator==(const AnnotatedDocument&) const = default;

  std::size_t token_count() const;
  void rebuild_term_set();
  // A document with only the sentences whose ordinals are listed (in
  // document order); the term set is recomputed from those sentences alone.
  AnnotatedDocument subset(const std::set<std::size_t>& indices) const;
};

}  // namespace reqcomp::nlp

#include "reqcomp/nlp/types.h"

#include <algorithm>

namespace reqcomp::nlp {

const std::vector<std::string>& tag_set() {
  static const std::vector<std::string> tags = {
      "CC",  "CD",  "DT",   "EX",  "FW",  "IN",  "JJ",    "JJR",    "JJS",   "LS",   "MD",
      "NN",  "NNS", "NNP",  "NNPS", "PDT", "POS", "PRP",  "PRP$",   "RB",    "RBR",  "RBS",
      "RP",  "SYM", "TO",   "UH",  "VB",  "VBD", "VBG",   "VBN",    "VBP",   "VBZ",  "WDT",
      "WP",  "WP$", "WRB",  "COMMA", "PERIOD", "COLON", "LRB", "RRB", "QUOTE", "HYPH", "PUNCT"};
  return tags;
}

bool is_valid_tag(std::string_view tag) {
  const auto& tags = tag_set();
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool is_noun_tag(std::string_view tag) {
  return tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS";
}

bool is_verb_tag(std::string_view tag) {
  return tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" || tag == "VBP" ||
         tag == "VBZ";
}

bool is_punct_tag(std::string_view tag) {
  return tag == "COMMA" || tag == "PERIOD" || tag == "COLON" || tag == "LRB" || tag == "RRB" ||
         tag == "QUOTE" || tag == "HYPH" || tag == "PUNCT";
}

std::size_t AnnotatedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

void AnnotatedDocument::rebuild_term_set() {
  term_set.clear();
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      if (!t.lemma.empty()) term_set.insert(t.lemma);
    }
  }
}

AnnotatedDocument AnnotatedDocument::subset(const std::set<std::size_t>& indices) const {
  AnnotatedDocument out;
  out.doc_id = doc_id;
  for (const auto& s : sentences) {
    if (indices.count(s.index)) out.sentences.push_back(s);
  }
  out.rebuild_term_set();
  return out;
}

}  // namespace reqcomp::nlp

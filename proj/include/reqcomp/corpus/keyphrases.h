#pragma once

#include <string>
#include <vector>

#include "reqcomp/nlp/types.h"

namespace reqcomp::corpus {

struct Keyphrase {
  std::string text;       // surface words of the first occurrence
  std::string lemma_key;  // space-joined lemmas; unique within a result
  std::size_t source_count = 0;

  bool operator==(const Keyphrase&) const = default;
};

// Maximal noun phrases of the shape JJ* NN+ (adjectives then at least one
// noun), merged by lemma key and ranked by occurrence count, then key.
std::vector<Keyphrase> extract_keyphrases(const nlp::AnnotatedDocument& doc);

}  // namespace reqcomp::corpus

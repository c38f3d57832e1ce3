#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "reqcomp/nlp/types.h"

namespace reqcomp::nlp {

// Token range [first, last) of one sentence plus its byte span in the source.
struct SentenceSpan {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Groups tokens into sentences. A sentence ends after '.', '!' or '?' (plus
// any closing quote or bracket attached to it), after an ellipsis that is
// followed by a capitalised word, or at a blank line. Abbreviations never end
// a sentence because the tokenizer keeps their period inside the word.
std::vector<SentenceSpan> split_sentences(std::string_view text, const std::vector<Token>& tokens);

}  // namespace reqcomp::nlp

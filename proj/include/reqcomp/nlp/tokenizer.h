#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "reqcomp/nlp/types.h"

namespace reqcomp::nlp {

// Rule-based word tokenizer. Whitespace separates tokens; punctuation is split
// into its own tokens except inside numbers ("2.5", "1,000"), inside words
// joined by hyphens/apostrophes/periods ("real-time", "e.g."), and for the
// trailing period of a known abbreviation. English clitics are split off
// Penn-Treebank style ("don't" -> "do" "n't", "system's" -> "system" "'s").
class Tokenizer {
 public:
  Tokenizer();
  explicit Tokenizer(const std::vector<std::string>& abbreviations);
  static Tokenizer from_file(const std::filesystem::path& path);

  std::vector<Token> tokenize(std::string_view text) const;

  // Case-insensitive; the argument includes its final period ("approx.").
  bool is_abbreviation(std::string_view word) const;

 private:
  void tokenize_chunk(std::string_view text, std::size_t begin, std::size_t end,
                      std::vector<Token>& out) const;

  std::unordered_set<std::string> abbreviations_;
};

// True for tokens that can end a sentence ('.', '!', '?', runs thereof, '...').
bool is_terminator(std::string_view surface);

}  // namespace reqcomp::nlp

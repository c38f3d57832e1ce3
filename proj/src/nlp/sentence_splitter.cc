#include "reqcomp/nlp/sentence_splitter.h"

#include "reqcomp/nlp/tokenizer.h"

namespace reqcomp::nlp {
namespace {

bool is_closer(std::string_view s) {
  return s == ")" || s == "]" || s == "}" || s == "\"" || s == "'" || s == "\xE2\x80\x9D" ||
         s == "\xE2\x80\x99" || s == "\xC2\xBB";
}

bool is_ellipsis(std::string_view s) {
  return s == "\xE2\x80\xA6" || (s.size() >= 3 && s.find_first_not_of('.') == std::string_view::npos);
}

bool starts_upper(std::string_view s) {
  return !s.empty() && ((s[0] >= 'A' && s[0] <= 'Z') || (s[0] >= '0' && s[0] <= '9'));
}

bool paragraph_break(std::string_view gap) {
  int newlines = 0;
  for (char c : gap) {
    if (c == '\n') {
      if (++newlines >= 2) return true;
    } else if (c != ' ' && c != '\t' && c != '\r') {
      newlines = 0;
    }
  }
  return false;
}

}  // namespace

std::vector<SentenceSpan> split_sentences(std::string_view text, const std::vector<Token>& tokens) {
  std::vector<SentenceSpan> out;
  std::size_t first = 0;
  auto close = [&](std::size_t last) {
    if (last > first) {
      out.push_back({first, last, tokens[first].start, tokens[last - 1].end});
    }
    first = last;
  };
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& tok = tokens[i];
    bool boundary = false;
    if (is_terminator(tok.surface)) {
      if (is_ellipsis(tok.surface)) {
        boundary = i + 1 >= tokens.size() || starts_upper(tokens[i + 1].surface);
      } else {
        boundary = true;
      }
    }
    if (boundary) {
      std::size_t j = i + 1;
      while (j < tokens.size() && tokens[j].start == tokens[j - 1].end && is_closer(tokens[j].surface)) ++j;
      close(j);
      i = j;
      continue;
    }
    if (i + 1 < tokens.size() &&
        paragraph_break(text.substr(tok.end, tokens[i + 1].start - tok.end))) {
      close(i + 1);
    }
    ++i;
  }
  close(tokens.size());
  return out;
}

}  // namespace reqcomp::nlp

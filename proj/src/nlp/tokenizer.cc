#include "reqcomp/nlp/tokenizer.h"

#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::nlp {
namespace {

const char* const kDefaultAbbreviations[] = {
    "approx.", "cf.", "dept.", "dr.", "e.g.", "eq.", "etc.", "fig.", "i.e.", "inc.", "incl.",
    "ltd.",    "mr.", "mrs.",  "no.", "prof.", "ref.", "resp.", "sr.", "st.", "vs.", "jr."};

bool is_ascii_letter(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_word_char(char32_t c) {
  if (c < 0x80) return is_ascii_letter(c) || is_digit(c);
  if (c == 0xFFFD) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // general punctuation, arrows, symbols
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0x00A0 && c <= 0x00BF) return false;
  if (c == 0x00D7 || c == 0x00F7) return false;
  return true;
}

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

struct Cp {
  char32_t c;
  std::size_t begin;
  std::size_t end;
};

std::vector<Cp> decode(std::string_view text, std::size_t begin, std::size_t end) {
  std::vector<Cp> out;
  std::size_t pos = begin;
  while (pos < end) {
    std::size_t b = pos;
    char32_t c = next_code_point(text.substr(0, end), pos);
    out.push_back({c, b, pos});
  }
  return out;
}

// Punctuation that may be grouped into a single token when repeated.
bool groups(char32_t c) { return c == '.' || c == '-' || c == '!' || c == '?' || c == '*' || c == '=' || c == '#' || c == '_'; }

const char* const kClitics[] = {"'s", "'re", "'ve", "'ll", "'d", "'m"};

bool ends_with_ci(std::string_view s, std::string_view suffix) {
  if (s.size() < suffix.size()) return false;
  return to_lower(s.substr(s.size() - suffix.size())) == suffix;
}

}  // namespace

bool is_terminator(std::string_view s) {
  if (s.empty()) return false;
  if (s == "\xE2\x80\xA6") return true;  // horizontal ellipsis
  for (char c : s) {
    if (c != '.' && c != '!' && c != '?') return false;
  }
  return true;
}

Tokenizer::Tokenizer() {
  for (const char* a : kDefaultAbbreviations) abbreviations_.insert(a);
}

Tokenizer::Tokenizer(const std::vector<std::string>& abbreviations) {
  for (const auto& a : abbreviations) abbreviations_.insert(to_lower(a));
}

Tokenizer Tokenizer::from_file(const std::filesystem::path& path) {
  return Tokenizer(read_list_file(path));
}

bool Tokenizer::is_abbreviation(std::string_view word) const {
  return abbreviations_.count(to_lower(word)) > 0;
}

std::vector<Token> Tokenizer::tokenize(std::string_view text) const {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ascii_space(text[j])) ++j;
    if (j > i) tokenize_chunk(text, i, j, out);
    i = j;
  }
  return out;
}

void Tokenizer::tokenize_chunk(std::string_view text, std::size_t begin, std::size_t end,
                               std::vector<Token>& out) const {
  const auto cps = decode(text, begin, end);
  auto emit = [&](std::size_t b, std::size_t e) {
    out.push_back(Token{std::string(text.substr(b, e - b)), b, e, {}, {}});
  };
  auto emit_word = [&](std::size_t b, std::size_t e) {
    std::string_view w = text.substr(b, e - b);
    if (w.size() > 3 && (ends_with_ci(w, "n't") || ends_with_ci(w, "n\xE2\x80\x99t"))) {
      std::size_t cut = ends_with_ci(w, "n't") ? 3 : 5;
      emit(b, e - cut);
      emit(e - cut, e);
      return;
    }
    for (const char* c : kClitics) {
      std::string_view clitic(c);
      if (w.size() > clitic.size() && ends_with_ci(w, clitic)) {
        emit(b, e - clitic.size());
        emit(e - clitic.size(), e);
        return;
      }
      // Same clitic written with a typographic apostrophe (3 bytes).
      std::string curly = "\xE2\x80\x99" + std::string(clitic.substr(1));
      if (w.size() > curly.size() && ends_with_ci(w, curly)) {
        emit(b, e - curly.size());
        emit(e - curly.size(), e);
        return;
      }
    }
    emit(b, e);
  };

  std::size_t k = 0;
  while (k < cps.size()) {
    if (is_word_char(cps[k].c)) {
      std::size_t m = k + 1;
      bool has_inner_period = false;
      while (m < cps.size()) {
        char32_t c = cps[m].c;
        if (is_word_char(c)) {
          ++m;
          continue;
        }
        bool next_word = m + 1 < cps.size() && is_word_char(cps[m + 1].c);
        if (!next_word) break;
        char32_t prev = cps[m - 1].c;
        char32_t next = cps[m + 1].c;
        bool joins = false;
        if (c == '-' || c == '_' || c == '&' || is_apostrophe(c)) joins = true;
        if (c == '.') joins = true;
        if ((c == ',' || c == ':' || c == '/') && is_digit(prev) && is_digit(next)) joins = true;
        if (!joins) break;
        if (c == '.') has_inner_period = true;
        m += 2;
      }
      std::size_t wb = cps[k].begin;
      std::size_t we = cps[m - 1].end;
      if (m < cps.size() && cps[m].c == '.') {
        std::string_view word = text.substr(wb, we - wb);
        std::string with_period = std::string(word) + ".";
        bool dotted = has_inner_period && is_alphabetic(std::string(word.substr(0, 1)));
        bool dotted_letters = dotted;
        if (dotted) {
          for (char ch : word) {
            if (ch != '.' && !((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'))) {
              dotted_letters = false;
              break;
            }
          }
        }
        if (is_abbreviation(with_period) || dotted_letters) {
          emit(wb, cps[m].end);
          k = m + 1;
          continue;
        }
      }
      emit_word(wb, we);
      k = m;
      continue;
    }
    // Punctuation or symbol.
    std::size_t m = k + 1;
    if (cps[k].c < 0x80 && groups(cps[k].c)) {
      bool terminal = cps[k].c == '.' || cps[k].c == '!' || cps[k].c == '?';
      while (m < cps.size()) {
        char32_t c = cps[m].c;
        bool same = c == cps[k].c;
        bool term_run = terminal && (c == '.' || c == '!' || c == '?');
        if (!same && !term_run) break;
        ++m;
      }
    }
    emit(cps[k].begin, cps[m - 1].end);
    k = m;
  }
}

}  // namespace reqcomp::nlp

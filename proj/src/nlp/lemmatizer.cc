#include "reqcomp/nlp/lemmatizer.h"

#include "reqcomp/nlp/types.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::nlp {
namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// "runn" -> "run", but not "ll"/"ss"/"zz"/"ff" which are common in base forms.
bool doubled(const std::string& s) {
  if (s.size() < 3) return false;
  char a = s[s.size() - 1];
  char b = s[s.size() - 2];
  return a == b && !is_vowel(a) && a != 'l' && a != 's' && a != 'z' && a != 'f';
}

bool ends(const std::string& s, std::string_view suf, std::size_t min_stem = 1) {
  return s.size() >= suf.size() + min_stem && std::string_view(s).ends_with(suf);
}

std::string cut(const std::string& s, std::size_t n) { return s.substr(0, s.size() - n); }

}  // namespace

Lemmatizer Lemmatizer::load(const std::filesystem::path& exceptions, const std::filesystem::path& base_forms) {
  Lemmatizer lem;
  std::size_t n = 0;
  for (const auto& line : read_list_file(exceptions)) {
    ++n;
    auto parts = split_whitespace(line);
    if (parts.size() != 3) throw ParseError("expected 'form class lemma'", exceptions.string(), n);
    lem.add_exception(parts[0], parts[1], parts[2]);
  }
  n = 0;
  for (const auto& line : read_list_file(base_forms)) {
    ++n;
    auto parts = split_whitespace(line);
    if (parts.size() != 2) throw ParseError("expected 'word class'", base_forms.string(), n);
    lem.add_base_form(parts[0], parts[1]);
  }
  return lem;
}

void Lemmatizer::add_exception(std::string form, std::string word_class, std::string lemma) {
  exceptions_[{std::move(form), std::move(word_class)}] = std::move(lemma);
}

void Lemmatizer::add_base_form(std::string word, std::string word_class) {
  base_.insert({std::move(word), std::move(word_class)});
}

bool Lemmatizer::known(const std::string& w, const char* cls) const { return base_.count({w, cls}) > 0; }

const std::string* Lemmatizer::exception(const std::string& w, const char* cls) const {
  auto it = exceptions_.find(std::make_pair(w, std::string(cls)));
  return it == exceptions_.end() ? nullptr : &it->second;
}

std::string Lemmatizer::lemmatize(std::string_view surface, std::string_view pos) const {
  std::string w = to_lower(surface);
  if (!is_alphabetic(w)) {
    if (w == "n't" || w == "n\xE2\x80\x99t") return "not";
    if (w == "'re" || w == "'m") return "be";
    if (w == "'ve") return "have";
    if (w == "'ll") return "will";
    if (w == "'d") return "would";
    return w;
  }
  // Iterate to a fixpoint so that lemmatize(lemmatize(w)) == lemmatize(w).
  // Suffix rules always shorten the word; the bound guards against cycles in
  // the exception table.
  for (int guard = 0; guard < 16; ++guard) {
    std::string next = step(w, pos);
    if (next == w || next.empty()) return w;
    w = std::move(next);
  }
  return w;
}

std::string Lemmatizer::step(const std::string& w, std::string_view pos) const {
  if (pos == "MD") {
    // Stems left behind by splitting "can't" and "won't".
    if (w == "ca") return "can";
    if (w == "wo") return "will";
    return w;
  }
  if (pos == "NNS" || pos == "NNPS") return noun_step(w);
  if (pos == "VBZ" || pos == "VBD" || pos == "VBN" || pos == "VBG" || pos == "VBP" || pos == "VB")
    return verb_step(w, pos);
  if (pos == "JJR" || pos == "JJS") return adj_step(w, pos);
  return w;
}

std::string Lemmatizer::noun_step(const std::string& w) const {
  if (const std::string* e = exception(w, "noun")) return *e;
  if (known(w, "noun")) return w;
  if (w.size() < 3 || !w.ends_with('s')) return w;
  if (ends(w, "ss") || ends(w, "us") || ends(w, "is")) return w;
  std::vector<std::string> candidates;
  std::string fallback;
  if (ends(w, "ies", 2)) {
    candidates = {cut(w, 3) + "y", cut(w, 1)};
    fallback = candidates[0];
  } else if (ends(w, "ves", 2)) {
    candidates = {cut(w, 3) + "f", cut(w, 3) + "fe", cut(w, 1)};
    fallback = cut(w, 1);
  } else if (ends(w, "sses") || ends(w, "xes") || ends(w, "zes") || ends(w, "ches") || ends(w, "shes")) {
    candidates = {cut(w, 2), cut(w, 1)};
    fallback = candidates[0];
  } else if (ends(w, "oes", 2)) {
    candidates = {cut(w, 2), cut(w, 1)};
    fallback = candidates[0];
  } else {
    candidates = {cut(w, 1)};
    fallback = candidates[0];
  }
  for (const auto& c : candidates) {
    if (known(c, "noun")) return c;
  }
  return fallback;
}

std::string Lemmatizer::verb_step(const std::string& w, std::string_view pos) const {
  if (const std::string* e = exception(w, "verb")) return *e;
  if (known(w, "verb")) return w;
  std::vector<std::string> candidates;
  std::string fallback = w;
  if (pos == "VBZ") {
    if (ends(w, "ies", 2)) {
      candidates = {cut(w, 3) + "y"};
    } else if (ends(w, "sses") || ends(w, "xes") || ends(w, "zes") || ends(w, "ches") || ends(w, "shes") ||
               ends(w, "oes", 1)) {
      candidates = {cut(w, 2), cut(w, 1)};
    } else if (ends(w, "s", 2) && !ends(w, "ss")) {
      candidates = {cut(w, 1)};
    }
    if (!candidates.empty()) fallback = candidates[0];
  } else if (pos == "VBG") {
    if (ends(w, "ing", 2)) {
      std::string stem = cut(w, 3);
      if (ends(w, "ying", 1)) candidates.push_back(cut(w, 4) + "ie");
      candidates.push_back(stem);
      candidates.push_back(stem + "e");
      if (doubled(stem)) candidates.push_back(cut(stem, 1));
      fallback = doubled(stem) ? cut(stem, 1) : stem;
    }
  } else if (pos == "VBD" || pos == "VBN") {
    if (ends(w, "ied", 2)) {
      candidates = {cut(w, 3) + "y"};
      fallback = candidates[0];
    } else if (ends(w, "ed", 2)) {
      std::string stem = cut(w, 2);
      candidates = {stem, cut(w, 1)};
      if (doubled(stem)) candidates.push_back(cut(stem, 1));
      fallback = doubled(stem) ? cut(stem, 1) : stem;
    }
  }
  for (const auto& c : candidates) {
    if (known(c, "verb")) return c;
  }
  return fallback;
}

std::string Lemmatizer::adj_step(const std::string& w, std::string_view pos) const {
  if (const std::string* e = exception(w, "adj")) return *e;
  if (known(w, "adj")) return w;
  std::string_view suf = pos == "JJR" ? "er" : "est";
  if (!ends(w, suf, 2)) return w;
  std::string stem = cut(w, suf.size());
  std::vector<std::string> candidates = {stem, stem + "e"};
  if (stem.ends_with('i')) candidates.push_back(cut(stem, 1) + "y");
  if (doubled(stem)) candidates.push_back(cut(stem, 1));
  for (const auto& c : candidates) {
    if (known(c, "adj")) return c;
  }
  // Unknown comparatives stay as written ("user" tagged JJR by mistake).
  return w;
}

}  // namespace reqcomp::nlp

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace reqcomp::nlp {

// Lookup-table lemmatizer: irregular forms come from an exception table,
// regular inflections are undone by suffix rules whose output is checked
// against a vocabulary of known base forms. The tag decides which rules run.
// Output is lowercase. Unknown words keep their (lowercased) surface unless a
// rule applies unambiguously.
class Lemmatizer {
 public:
  Lemmatizer() = default;
  static Lemmatizer load(const std::filesystem::path& exceptions, const std::filesystem::path& base_forms);

  void add_exception(std::string form, std::string word_class, std::string lemma);
  void add_base_form(std::string word, std::string word_class);

  std::string lemmatize(std::string_view surface, std::string_view pos) const;

 private:
  std::string step(const std::string& word, std::string_view pos) const;
  std::string noun_step(const std::string& w) const;
  std::string verb_step(const std::string& w, std::string_view pos) const;
  std::string adj_step(const std::string& w, std::string_view pos) const;
  bool known(const std::string& w, const char* cls) const;
  const std::string* exception(const std::string& w, const char* cls) const;

  std::map<std::pair<std::string, std::string>, std::string, std::less<>> exceptions_;
  std::set<std::pair<std::string, std::string>, std::less<>> base_;
};

}  // namespace reqcomp::nlp

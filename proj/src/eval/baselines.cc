#include "reqcomp/eval/baselines.h"

#include <algorithm>

#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::eval {

// ---- WordNet

SynonymLexicon SynonymLexicon::load_wordnet(const std::filesystem::path& dir) {
  SynonymLexicon lex;
  bool any = false;
  for (const char* name : {"data.noun", "data.verb", "data.adj", "data.adv"}) {
    auto path = dir / name;
    if (!std::filesystem::exists(path)) continue;
    lex.add_wordnet_data(read_file(path), path.string());
    any = true;
  }
  if (!any) throw ConfigError("no WordNet data.* files in " + dir.string());
  return lex;
}

void SynonymLexicon::add_wordnet_data(std::string_view text, const std::string& source) {
  std::size_t line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line[0] == ' ') continue;  // license header lines start with two spaces
    auto fields = split_whitespace(line.substr(0, line.find('|')));
    auto fail = [&] { return ParseError("malformed synset line", source, line_no); };
    if (fields.size() < 4) throw fail();
    std::size_t count = 0;
    try {
      count = std::stoul(fields[3], nullptr, 16);
    } catch (const std::exception&) {
      throw fail();
    }
    if (count == 0 || fields.size() < 4 + 2 * count) throw fail();
    std::vector<std::string> words;
    for (std::size_t i = 0; i < count; ++i) {
      std::string w = fields[4 + 2 * i];
      if (auto paren = w.find('('); paren != std::string::npos) w.erase(paren);  // adjective markers like (a)
      words.push_back(to_lower(w));
    }
    add_synset(words);
  }
}

void SynonymLexicon::add_synset(const std::vector<std::string>& words) {
  std::vector<std::string> single;
  for (const auto& w : words) {
    if (w.find('_') == std::string::npos && is_alphabetic(w)) single.push_back(w);
  }
  for (const auto& a : single) {
    auto& set = synonyms_[a];
    for (const auto& b : single) {
      if (a != b) set.insert(b);
    }
  }
}

std::vector<std::string> SynonymLexicon::synonyms(std::string_view word) const {
  auto it = synonyms_.find(word);
  if (it == synonyms_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

// ---- baselines

namespace {

BaselineResult keep_novel(const TermSet& candidates, const TermSet& disclosed, const TermSet& withheld,
                          const filter::WordLists& lists) {
  BaselineResult out;
  for (const auto& t : candidates) {
    if (disclosed.count(t) || lists.is_stop(t)) continue;
    out.candidates.insert(t);
    if (withheld.count(t)) out.hits.insert(t);
  }
  return out;
}

}  // namespace

BaselineResult baseline1(const TermSet& disclosed, const TermSet& withheld, const filter::WordLists& lists,
                         const nlp::Pipeline& pipeline, const Baseline1Options& options) {
  if (options.first_rank < 1 || options.first_rank > options.last_rank)
    throw InvalidArgument("baseline 1 rank range must satisfy 1 <= first <= last");
  const auto& common = lists.common_words();
  std::vector<std::string> words;
  for (std::size_t r = options.first_rank; r <= options.last_rank && r <= common.size(); ++r)
    words.push_back(common[r - 1]);
  return keep_novel(lemmatize_words(words, pipeline), disclosed, withheld, lists);
}

BaselineResult baseline2(const TermSet& disclosed, const TermSet& withheld, const corpus::TfidfIndex& tfidf,
                         const filter::WordLists& lists, std::size_t k_top) {
  if (tfidf.document_count() == 0) {
    BaselineResult out;
    out.empty_source = true;
    return out;
  }
  TermSet top;
  for (const auto& [term, _] : tfidf.ranked_terms()) {
    if (top.size() >= k_top) break;
    top.insert(term);
  }
  return keep_novel(top, disclosed, withheld, lists);
}

BaselineResult baseline3(const TermSet& disclosed, const TermSet& withheld, const SynonymLexicon& lexicon,
                         const filter::WordLists& lists, const nlp::Pipeline& pipeline) {
  std::vector<std::string> words;
  for (const auto& t : disclosed) {
    for (auto& s : lexicon.synonyms(t)) words.push_back(std::move(s));
  }
  return keep_novel(lemmatize_words(words, pipeline), disclosed, withheld, lists);
}

}  // namespace reqcomp::eval

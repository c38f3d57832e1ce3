#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "reqcomp/corpus/tfidf.h"
#include "reqcomp/eval/metrics.h"
#include "reqcomp/filter/term_filter.h"

namespace reqcomp::eval {

// Synonym sets read from WordNet database files (data.noun, data.verb,
// data.adj, data.adv; any that exist). Multi-word lemmas are dropped.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;
  static SynonymLexicon load_wordnet(const std::filesystem::path& dir);
  // Parses the body of one data.* file.
  void add_wordnet_data(std::string_view text, const std::string& source = "<memory>");
  void add_synset(const std::vector<std::string>& words);
  // Every other word sharing a synset with word, sorted.
  std::vector<std::string> synonyms(std::string_view word) const;
  std::size_t size() const { return synonyms_.size(); }

 private:
  std::map<std::string, std::set<std::string>, std::less<>> synonyms_;
};

// candidates: the baseline's recommendations once disclosed terms and stop
// words are excluded (scored as D). hits: the candidates that occur in the
// withheld half.
struct BaselineResult {
  TermSet candidates;
  TermSet hits;
  bool empty_source = false;
};

struct Baseline1Options {
  std::size_t first_rank = 250;  // 1-based, inclusive
  std::size_t last_rank = 1000;
};

// The common words ranked first_rank..last_rank.
BaselineResult baseline1(const TermSet& disclosed, const TermSet& withheld, const filter::WordLists& lists,
                         const nlp::Pipeline& pipeline, const Baseline1Options& options = {});

inline constexpr std::size_t kDefaultTopK = 1000;

// The k_top corpus terms by TF-IDF; an empty corpus sets empty_source.
BaselineResult baseline2(const TermSet& disclosed, const TermSet& withheld, const corpus::TfidfIndex& tfidf,
                         const filter::WordLists& lists, std::size_t k_top = kDefaultTopK);

// Synonyms of the disclosed terms.
BaselineResult baseline3(const TermSet& disclosed, const TermSet& withheld, const SynonymLexicon& lexicon,
                         const filter::WordLists& lists, const nlp::Pipeline& pipeline);

}  // namespace reqcomp::eval

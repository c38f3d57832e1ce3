#include "reqcomp/corpus/keyphrases.h"

#include <algorithm>
#include <map>

#include "reqcomp/util/text.h"

namespace reqcomp::corpus {
namespace {

bool is_adj(const std::string& tag) { return tag == "JJ" || tag == "JJR" || tag == "JJS"; }

}  // namespace

std::vector<Keyphrase> extract_keyphrases(const nlp::AnnotatedDocument& doc) {
  std::map<std::string, Keyphrase> by_key;
  for (const auto& s : doc.sentences) {
    const auto& toks = s.tokens;
    std::size_t i = 0;
    while (i < toks.size()) {
      std::size_t start = i;
      std::size_t j = i;
      while (j < toks.size() && is_adj(toks[j].pos)) ++j;
      std::size_t nouns_start = j;
      while (j < toks.size() && nlp::is_noun_tag(toks[j].pos) && is_alphabetic(toks[j].surface)) ++j;
      if (j == nouns_start) {
        i = std::max(j, i + 1);
        continue;
      }
      std::vector<std::string> words, lemmas;
      for (std::size_t k = start; k < j; ++k) {
        words.push_back(toks[k].surface);
        lemmas.push_back(toks[k].lemma);
      }
      std::string key = join(lemmas, " ");
      auto& kp = by_key[key];
      if (kp.source_count == 0) {
        kp.text = join(words, " ");
        kp.lemma_key = key;
      }
      kp.source_count++;
      i = j;
    }
  }
  std::vector<Keyphrase> out;
  for (auto& [_, kp] : by_key) out.push_back(std::move(kp));
  std::stable_sort(out.begin(), out.end(),
                   [](const Keyphrase& a, const Keyphrase& b) { return a.source_count > b.source_count; });
  return out;
}

}  // namespace reqcomp::corpus

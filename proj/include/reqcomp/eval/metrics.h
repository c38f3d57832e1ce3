#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "reqcomp/embed/embeddings.h"
#include "reqcomp/filter/term_filter.h"
#include "reqcomp/ml/dataset.h"
#include "reqcomp/mlm/client.h"
#include "reqcomp/nlp/pipeline.h"

namespace reqcomp::eval {

using TermSet = std::set<std::string>;

// U(Lem(doc)): lowercased alphabetic token lemmas.
TermSet document_terms(const nlp::AnnotatedDocument& doc);
// U(Lem(V)) for prediction records (their annotated lemma, else the
// lowercased token), alphabetic only.
TermSet prediction_terms(const std::vector<mlm::PredictionRecord>& records);
// U(Lem(words)) for context-free words: each is tagged on its own and
// lemmatized.
TermSet lemmatize_words(const std::vector<std::string>& words, const nlp::Pipeline& pipeline);

// C: the common_cutoff most frequent words plus stop and vague words, the
// same vocabulary term pruning removes.
TermSet common_terms(const filter::WordLists& lists, std::size_t common_cutoff = filter::kDefaultCommonCutoff);

// (Y - X) - C
TermSet novel_terms(const TermSet& disclosed, const TermSet& withheld, const TermSet& common);

struct Ratio {
  double value = 0;
  std::size_t numerator = 0;
  std::size_t denominator = 0;
  bool undefined = false;  // empty denominator; value is 0
};

// Share of D matching some term of N.
Ratio accuracy(const TermSet& d, const TermSet& n, const embed::TermMatcher& matcher);
// Share of N matched by some term of D; each N term counts once.
Ratio coverage(const TermSet& d, const TermSet& n, const embed::TermMatcher& matcher);

// labels[i] / classified[i] are relevance flags for the same prediction.
ml::ClassificationMetrics filter_metrics(const std::vector<bool>& labels, const std::vector<bool>& classified);

}  // namespace reqcomp::eval

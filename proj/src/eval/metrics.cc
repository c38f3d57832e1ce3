#include "reqcomp/eval/metrics.h"

#include "reqcomp/filter/term_filter.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/text.h"

namespace reqcomp::eval {

TermSet document_terms(const nlp::AnnotatedDocument& doc) {
  TermSet out;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      std::string lemma = to_lower(t.lemma.empty() ? t.surface : t.lemma);
      if (is_alphabetic(lemma)) out.insert(std::move(lemma));
    }
  }
  return out;
}

TermSet prediction_terms(const std::vector<mlm::PredictionRecord>& records) {
  TermSet out;
  for (const auto& r : records) {
    std::string lemma = filter::record_lemma(r);
    if (is_alphabetic(lemma)) out.insert(std::move(lemma));
  }
  return out;
}

TermSet lemmatize_words(const std::vector<std::string>& words, const nlp::Pipeline& pipeline) {
  TermSet out;
  for (const auto& w : words) {
    std::string lower = to_lower(w);
    if (!is_alphabetic(lower)) continue;
    std::string tag = pipeline.tagger().tag(std::vector<std::string>{lower}).at(0);
    out.insert(to_lower(pipeline.lemmatize(lower, tag)));
  }
  return out;
}

TermSet common_terms(const filter::WordLists& lists, std::size_t common_cutoff) {
  TermSet out;
  const auto& common = lists.common_words();
  for (std::size_t i = 0; i < common.size() && i < common_cutoff; ++i) out.insert(to_lower(common[i]));
  return out;
}

TermSet novel_terms(const TermSet& disclosed, const TermSet& withheld, const TermSet& common) {
  TermSet out;
  for (const auto& t : withheld) {
    if (!disclosed.count(t) && !common.count(t)) out.insert(t);
  }
  return out;
}

namespace {

// Number of terms in `from` matching at least one term in `to`.
std::size_t matched(const TermSet& from, const TermSet& to, const embed::TermMatcher& matcher) {
  std::size_t hits = 0;
  for (const auto& a : from) {
    if (to.count(a)) {
      ++hits;
      continue;
    }
    for (const auto& b : to) {
      if (matcher.is_match(a, b)) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

Ratio ratio(std::size_t num, std::size_t den) {
  Ratio r;
  r.numerator = num;
  r.denominator = den;
  if (den == 0) {
    r.undefined = true;
  } else {
    r.value = static_cast<double>(num) / static_cast<double>(den);
  }
  return r;
}

}  // namespace

Ratio accuracy(const TermSet& d, const TermSet& n, const embed::TermMatcher& matcher) {
  return ratio(matched(d, n, matcher), d.size());
}

Ratio coverage(const TermSet& d, const TermSet& n, const embed::TermMatcher& matcher) {
  return ratio(matched(n, d, matcher), n.size());
}

ml::ClassificationMetrics filter_metrics(const std::vector<bool>& labels, const std::vector<bool>& classified) {
  if (labels.size() != classified.size()) throw InvalidArgument("labels and classifications differ in length");
  ml::ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i)
    c.add(labels[i] ? ml::kRelevant : ml::kNonRelevant, classified[i] ? ml::kRelevant : ml::kNonRelevant);
  return ml::ClassificationMetrics::from(c);
}

}  // namespace reqcomp::eval

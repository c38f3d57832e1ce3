#include "reqcomp/ml/dataset.h"

#include <algorithm>
#include <cmath>

#include "reqcomp/util/errors.h"
#include "reqcomp/util/rng.h"

namespace reqcomp::ml {

std::size_t Dataset::count(int label) const { return static_cast<std::size_t>(std::count(y.begin(), y.end(), label)); }

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.fingerprint = fingerprint;
  out.sources = sources;
  out.x.reserve(rows.size());
  out.y.reserve(rows.size());
  for (std::size_t r : rows) {
    out.x.push_back(x.at(r));
    out.y.push_back(y.at(r));
  }
  return out;
}

void Dataset::validate() const {
  if (x.size() != y.size()) throw InvalidArgument("dataset has " + std::to_string(x.size()) + " rows but " +
                                                  std::to_string(y.size()) + " labels");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != feature_names.size()) throw InvalidArgument("dataset row " + std::to_string(i) + " has wrong width");
    if (y[i] != kRelevant && y[i] != kNonRelevant) throw InvalidArgument("dataset label must be 0 or 1");
    for (double v : x[i]) {
      if (!std::isfinite(v)) throw InvalidArgument("dataset row " + std::to_string(i) + " has a non-finite value");
    }
  }
}

Dataset from_matrix(const features::FeatureMatrix& m) {
  Dataset d;
  d.feature_names = features::encoded_names();
  d.fingerprint = m.fingerprint;
  if (!m.doc_id.empty()) d.sources.push_back(m.doc_id);
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (!m.rows[i].label) throw InvalidArgument("matrix row " + std::to_string(i) + " has no label");
    d.x.push_back(features::encode(m.rows[i]));
    d.y.push_back(*m.rows[i].label ? kRelevant : kNonRelevant);
  }
  return d;
}

void label_matrix(features::FeatureMatrix& m, const std::set<std::string>& novel_terms,
                  const embed::TermMatcher& matcher) {
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    bool relevant = false;
    for (const auto& t : novel_terms) {
      if (matcher.is_match(m.keys[i].prediction, t)) {
        relevant = true;
        break;
      }
    }
    m.rows[i].label = relevant;
  }
}

std::vector<std::size_t> undersample_indices(const std::vector<int>& y, double ratio, std::uint64_t seed) {
  if (!(ratio > 0)) throw InvalidArgument("under-sampling ratio must be positive");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == kRelevant ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty()) throw InvalidArgument("under-sampling needs both classes");
  auto& minority = pos.size() <= neg.size() ? pos : neg;
  auto& majority = pos.size() <= neg.size() ? neg : pos;
  auto keep = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(minority.size())));
  keep = std::min(keep, majority.size());
  Rng rng(derive_seed(seed, "undersample"));
  rng.shuffle(std::span(majority));
  majority.resize(keep);
  std::vector<std::size_t> out = minority;
  out.insert(out.end(), majority.begin(), majority.end());
  std::sort(out.begin(), out.end());
  return out;
}

Dataset undersample(const Dataset& data, double ratio, std::uint64_t seed) {
  return data.subset(undersample_indices(data.y, ratio, seed));
}

std::vector<double> instance_weights(const std::vector<int>& y, const std::optional<CostMatrix>& cost) {
  if (cost && (!(cost->cost_fn > 0) || !(cost->cost_fp > 0))) throw InvalidArgument("costs must be positive");
  std::vector<double> w(y.size(), 1.0);
  if (!cost) return w;
  for (std::size_t i = 0; i < y.size(); ++i) w[i] = y[i] == kRelevant ? cost->cost_fn : cost->cost_fp;
  return w;
}

void ConfusionCounts::add(int truth, int predicted) {
  if (truth == kRelevant) {
    ++(predicted == kRelevant ? tp : fn);
  } else {
    ++(predicted == kRelevant ? fp : tn);
  }
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

ClassificationMetrics ClassificationMetrics::from(const ConfusionCounts& c) {
  ClassificationMetrics m;
  m.counts = c;
  auto ratio = [](std::size_t num, std::size_t den, bool& undefined) {
    undefined = den == 0;
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = ratio(c.tp + c.tn, c.total(), m.accuracy_undefined);
  m.precision = ratio(c.tp, c.tp + c.fp, m.precision_undefined);
  m.recall = ratio(c.tp, c.tp + c.fn, m.recall_undefined);
  return m;
}

}  // namespace reqcomp::ml

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reqcomp/embed/embeddings.h"
#include "reqcomp/features/matrix.h"

namespace reqcomp::ml {

inline constexpr int kRelevant = 1;
inline constexpr int kNonRelevant = 0;

// Dense numeric training data. y holds kRelevant / kNonRelevant.
struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<std::string> feature_names;
  std::string fingerprint;  // schema of the source matrix ("" for synthetic data)
  std::vector<std::string> sources;

  std::size_t size() const { return y.size(); }
  std::size_t dimension() const { return feature_names.size(); }
  std::size_t count(int label) const;
  Dataset subset(const std::vector<std::size_t>& rows) const;
  void validate() const;
};

// Encoded rows of a fully labeled matrix; throws InvalidArgument on an
// unlabeled row.
Dataset from_matrix(const features::FeatureMatrix& m);

// Labels every row: relevant iff the prediction matches some novel term.
void label_matrix(features::FeatureMatrix& m, const std::set<std::string>& novel_terms,
                  const embed::TermMatcher& matcher);

struct CostMatrix {
  double cost_fn = 2.0;  // missing a relevant prediction
  double cost_fp = 1.0;

  bool operator==(const CostMatrix&) const = default;
};

// Keeps every minority row and a seeded random sample of the majority so that
// majority / minority == ratio (or all of the majority if it is smaller).
// Rows stay in their original order. Throws InvalidArgument for one class.
Dataset undersample(const Dataset& data, double ratio, std::uint64_t seed);
std::vector<std::size_t> undersample_indices(const std::vector<int>& y, double ratio, std::uint64_t seed);

// Per-row weights: cost_fn for relevant rows, cost_fp otherwise; all 1
// without a cost matrix.
std::vector<double> instance_weights(const std::vector<int>& y, const std::optional<CostMatrix>& cost);

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  void add(int truth, int predicted);
  ConfusionCounts& operator+=(const ConfusionCounts& o);
  std::size_t total() const { return tp + fp + tn + fn; }
};

// Accuracy, precision and recall with the zero-denominator convention: the
// value is 0 and the matching flag is set.
struct ClassificationMetrics {
  ConfusionCounts counts;
  double accuracy = 0, precision = 0, recall = 0;
  bool accuracy_undefined = false, precision_undefined = false, recall_undefined = false;

  static ClassificationMetrics from(const ConfusionCounts& c);
};

}  // namespace reqcomp::ml

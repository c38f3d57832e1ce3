#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reqcomp/features/matrix.h"
#include "reqcomp/ml/classifiers.h"
#include "reqcomp/ml/dataset.h"

namespace reqcomp::ml {

struct TrainingConfig {
  Algorithm algorithm = Algorithm::kRF;
  Params params;  // defaults filled in
  std::optional<CostMatrix> cost;
  std::optional<double> undersample_ratio;  // set when the data was under-sampled first
  std::uint64_t seed = 0;
  std::string preset;  // empty unless built by train_preset
};

class FilterModel {
 public:
  TrainingConfig config;
  std::string fingerprint;
  std::vector<std::string> feature_names;
  std::size_t train_rows = 0;
  std::size_t train_relevant = 0;
  std::shared_ptr<const Classifier> classifier;

  // Raw encoded row; width must match feature_names.
  int classify(const std::vector<double>& encoded) const;
  // Requires the model to have been trained on the current feature schema.
  bool classify(const features::FeatureVector& v) const;
  // Throws SchemaMismatch unless the matrix fingerprint equals the model's.
  std::vector<bool> classify(const features::FeatureMatrix& m) const;
};

// Throws InvalidArgument for empty or single-class data.
FilterModel train(Algorithm algorithm, const Dataset& data, const Params& params = {},
                  const std::optional<CostMatrix>& cost = std::nullopt, std::uint64_t seed = 0);

void save_model(const FilterModel& model, const std::filesystem::path& path);
// ParseError for corrupt files or an unknown format version.
FilterModel load_model(const std::filesystem::path& path);
nlohmann::json model_to_json(const FilterModel& model);
FilterModel model_from_json(const nlohmann::json& j, const std::string& source = "<memory>");

// ---- evaluation

// Stratified fold id per row: each class is shuffled and dealt round-robin.
// Throws InvalidArgument when folds < 2 or folds exceeds the smaller class.
std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed);

struct CvResult {
  std::vector<ClassificationMetrics> folds;
  ClassificationMetrics pooled;  // over the concatenated test predictions
  double mean_accuracy = 0, mean_precision = 0, mean_recall = 0;
  std::vector<int> fold_of;  // fold id per row
};

CvResult cross_validate(Algorithm algorithm, const Dataset& data, const Params& params = {},
                        const std::optional<CostMatrix>& cost = std::nullopt, int folds = 10,
                        std::uint64_t seed = 0);

// Candidate values per hyperparameter.
using SearchSpace = std::vector<std::pair<std::string, std::vector<double>>>;
SearchSpace default_search_space(Algorithm algorithm);

struct TuneResult {
  Params best;
  double best_accuracy = 0;
  std::vector<std::pair<Params, double>> trials;  // in evaluation order
};

// Random search: up to budget configurations drawn from the space with a
// seeded generator, each scored by cross-validated accuracy. Repeated draws
// are skipped but use up budget. The first best configuration wins.
TuneResult tune(Algorithm algorithm, const Dataset& data, const SearchSpace& space, int budget,
                const std::optional<CostMatrix>& cost = std::nullopt, std::uint64_t seed = 0, int folds = 10);

// ---- information gain

// Equal-frequency bin per value; equal values always share a bin.
std::vector<int> equal_frequency_bins(const std::vector<double>& values, int bins = 10);
// H(label) - H(label | category), in bits.
double information_gain(const std::vector<int>& categories, const std::vector<int>& labels);

struct FeatureGain {
  std::string feature;
  double gain = 0;
};
// f1..f13 by gain, highest first (ties keep column order). Nominal and
// ordinal columns are used as categories; numeric columns are binned into 10
// equal-frequency bins, with undefined f9 as its own category.
std::vector<FeatureGain> info_gain_ranking(const features::FeatureMatrix& labeled);

// ---- presets

enum class Preset { kNone, kStrict, kModerate, kLenient };
std::string_view to_string(Preset p);
Preset preset_from_string(std::string_view s);

struct PresetOptions {
  std::uint64_t seed = 0;
  double undersample_ratio = 1.0;
  int tune_budget = 0;  // 0: learner defaults
  int folds = 10;
};

// strict: RF on all rows. moderate: RF on under-sampled rows. lenient: SVM on
// under-sampled rows with CostMatrix(2, 1).
FilterModel train_preset(Preset preset, const Dataset& data, const PresetOptions& options = {});

}  // namespace reqcomp::ml

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace reqcomp::ml {

enum class Algorithm { kLR, kDT, kRF, kSVM, kNN };

std::string_view to_string(Algorithm a);
// "LR", "DT", "RF", "SVM", "NN" (case-insensitive). Throws ConfigError.
Algorithm algorithm_from_string(std::string_view s);

// Named numeric hyperparameters; missing names take the learner's default.
using Params = std::map<std::string, double>;

// A binary learner over dense rows. fit() is deterministic given the seed.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const std::vector<double>& weights, std::uint64_t seed) = 0;
  // Larger means more likely relevant; predict() thresholds at decision_threshold().
  virtual double score(const std::vector<double>& x) const = 0;
  virtual double decision_threshold() const { return 0.5; }
  int predict(const std::vector<double>& x) const { return score(x) >= decision_threshold() ? 1 : 0; }

  virtual nlohmann::json to_json() const = 0;
  virtual void from_json(const nlohmann::json& j) = 0;
};

// Defaults filled in for every parameter the learner reads.
Params default_params(Algorithm a);
std::unique_ptr<Classifier> make_classifier(Algorithm a, const Params& params);

// z-scoring fitted on training rows; constant columns map to 0.
class Standardizer {
 public:
  void fit(const std::vector<std::vector<double>>& x);
  std::vector<double> apply(const std::vector<double>& x) const;
  nlohmann::json to_json() const;
  void from_json(const nlohmann::json& j);

 private:
  std::vector<double> mean_, scale_;
};

}  // namespace reqcomp::ml

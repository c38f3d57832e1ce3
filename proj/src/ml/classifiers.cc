#include <algorithm>
#include <cmath>

#include "learners.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/text.h"

namespace reqcomp::ml {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kLR: return "LR";
    case Algorithm::kDT: return "DT";
    case Algorithm::kRF: return "RF";
    case Algorithm::kSVM: return "SVM";
    case Algorithm::kNN: return "NN";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view s) {
  std::string u;
  for (char c : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Algorithm a : {Algorithm::kLR, Algorithm::kDT, Algorithm::kRF, Algorithm::kSVM, Algorithm::kNN}) {
    if (u == to_string(a)) return a;
  }
  throw ConfigError("unknown algorithm '" + std::string(s) + "' (expected LR, DT, RF, SVM or NN)");
}

double param(const Params& p, const std::string& name, double fallback) {
  auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

Params default_params(Algorithm a) {
  switch (a) {
    case Algorithm::kLR: return {{"l2", 1e-4}, {"max_iter", 100}};
    case Algorithm::kDT: return {{"max_depth", 0}, {"min_samples_leaf", 1}, {"max_features", 0}};
    case Algorithm::kRF: return {{"trees", 100}, {"max_depth", 0}, {"min_samples_leaf", 1}, {"max_features", 0}};
    case Algorithm::kSVM: return {{"C", 1.0}, {"max_iter", 1000}, {"tol", 1e-3}};
    case Algorithm::kNN:
      return {{"hidden", 16}, {"epochs", 200}, {"learning_rate", 0.01}, {"l2", 1e-4}, {"batch", 32}};
  }
  return {};
}

std::unique_ptr<Classifier> make_classifier(Algorithm a, const Params& params) {
  Params p = default_params(a);
  for (const auto& [k, v] : params) {
    if (!p.count(k)) throw ConfigError("unknown hyperparameter '" + k + "' for " + std::string(to_string(a)));
    p[k] = v;
  }
  switch (a) {
    case Algorithm::kLR: return std::make_unique<LogisticRegression>(p);
    case Algorithm::kDT: return std::make_unique<DecisionTree>(p);
    case Algorithm::kRF: return std::make_unique<RandomForest>(p);
    case Algorithm::kSVM: return std::make_unique<LinearSvm>(p);
    case Algorithm::kNN: return std::make_unique<Mlp>(p);
  }
  throw InvalidArgument("unsupported algorithm");
}

void Standardizer::fit(const std::vector<std::vector<double>>& x) {
  std::size_t d = x.empty() ? 0 : x[0].size();
  mean_.assign(d, 0.0);
  scale_.assign(d, 0.0);
  if (x.empty()) return;
  for (const auto& row : x) {
    for (std::size_t j = 0; j < d; ++j) mean_[j] += row[j];
  }
  for (auto& m : mean_) m /= static_cast<double>(x.size());
  std::vector<double> var(d, 0.0);
  for (const auto& row : x) {
    for (std::size_t j = 0; j < d; ++j) var[j] += (row[j] - mean_[j]) * (row[j] - mean_[j]);
  }
  for (std::size_t j = 0; j < d; ++j) {
    double sd = std::sqrt(var[j] / static_cast<double>(x.size()));
    scale_[j] = sd > 1e-12 ? 1.0 / sd : 0.0;
  }
}

std::vector<double> Standardizer::apply(const std::vector<double>& x) const {
  if (x.size() != mean_.size()) throw SchemaMismatch("row width " + std::to_string(x.size()) + " does not match model width " + std::to_string(mean_.size()));
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean_[j]) * scale_[j];
  return out;
}

nlohmann::json Standardizer::to_json() const { return {{"mean", mean_}, {"scale", scale_}}; }

void Standardizer::from_json(const nlohmann::json& j) {
  mean_ = j.at("mean").get<std::vector<double>>();
  scale_ = j.at("scale").get<std::vector<double>>();
  if (mean_.size() != scale_.size()) throw ParseError("standardizer width mismatch");
}

}  // namespace reqcomp::ml

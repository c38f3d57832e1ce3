#pragma once

#include "reqcomp/ml/classifiers.h"
#include "reqcomp/util/rng.h"

namespace reqcomp::ml {

double param(const Params& p, const std::string& name, double fallback);
double sigmoid(double z);

class LogisticRegression : public Classifier {
 public:
  explicit LogisticRegression(const Params& p);
  void fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y, const std::vector<double>& weights,
           std::uint64_t seed) override;
  double score(const std::vector<double>& x) const override;
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;

 private:
  double l2_;
  int max_iter_;
  Standardizer scaler_;
  std::vector<double> beta_;  // intercept last
};

// CART with weighted Gini impurity. Leaves hold the weighted share of
// relevant rows.
class DecisionTree : public Classifier {
 public:
  explicit DecisionTree(const Params& p);
  void fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y, const std::vector<double>& weights,
           std::uint64_t seed) override;
  double score(const std::vector<double>& x) const override;
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1 for a leaf
    double threshold = 0;
    int left = -1, right = -1;
    double value = 0;
  };
  int build(const std::vector<std::vector<double>>& x, const std::vector<int>& y, const std::vector<double>& w,
            std::vector<std::size_t>& rows, int depth, Rng& rng);

  int max_depth_;
  int min_samples_leaf_;
  int max_features_;  // 0 = all
  std::vector<Node> nodes_;
};

class RandomForest : public Classifier {
 public:
  explicit RandomForest(const Params& p);
  void fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y, const std::vector<double>& weights,
           std::uint64_t seed) override;
  double score(const std::vector<double>& x) const override;
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;

 private:
  Params tree_params_;
  int trees_;
  std::vector<DecisionTree> forest_;
};

// Linear SVM, hinge loss, solved by dual coordinate descent. Per-row
// weights scale the box constraint.
class LinearSvm : public Classifier {
 public:
  explicit LinearSvm(const Params& p);
  void fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y, const std::vector<double>& weights,
           std::uint64_t seed) override;
  double score(const std::vector<double>& x) const override;
  double decision_threshold() const override { return 0.0; }
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;

 private:
  double c_;
  int max_iter_;
  double tol_;
  Standardizer scaler_;
  std::vector<double> w_;  // bias last
};

// One hidden tanh layer, sigmoid output, weighted cross-entropy, Adam.
class Mlp : public Classifier {
 public:
  explicit Mlp(const Params& p);
  void fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y, const std::vector<double>& weights,
           std::uint64_t seed) override;
  double score(const std::vector<double>& x) const override;
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;

 private:
  int hidden_;
  int epochs_;
  double lr_;
  double l2_;
  int batch_;
  Standardizer scaler_;
  std::size_t in_ = 0;
  std::vector<double> w1_, b1_, w2_;  // w1: hidden x in, row-major
  double b2_ = 0;
};

}  // namespace reqcomp::ml

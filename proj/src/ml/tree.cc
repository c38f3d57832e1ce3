#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <mutex>
#include <thread>

#include "learners.h"
#include "reqcomp/util/errors.h"

namespace reqcomp::ml {

DecisionTree::DecisionTree(const Params& p)
    : max_depth_(static_cast<int>(param(p, "max_depth", 0))),
      min_samples_leaf_(std::max(1, static_cast<int>(param(p, "min_samples_leaf", 1)))),
      max_features_(static_cast<int>(param(p, "max_features", 0))) {}

void DecisionTree::fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& weights, std::uint64_t seed) {
  nodes_.clear();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (weights[i] > 0) rows.push_back(i);
  }
  if (rows.empty()) throw InvalidArgument("cannot train on an empty dataset");
  Rng rng(seed);
  build(x, y, weights, rows, 0, rng);
}

int DecisionTree::build(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                        const std::vector<double>& w, std::vector<std::size_t>& rows, int depth, Rng& rng) {
  double total = 0, pos = 0;
  for (std::size_t r : rows) {
    total += w[r];
    if (y[r]) pos += w[r];
  }
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  nodes_[id].value = total > 0 ? pos / total : 0.0;

  bool pure = pos <= 0 || pos >= total;
  bool too_deep = max_depth_ > 0 && depth >= max_depth_;
  if (pure || too_deep || rows.size() < 2 * static_cast<std::size_t>(min_samples_leaf_)) return id;

  std::size_t d = x[rows[0]].size();
  std::vector<std::size_t> candidates(d);
  std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  if (max_features_ > 0 && static_cast<std::size_t>(max_features_) < d) {
    // partial Fisher-Yates, then restore feature order so ties break the same way
    for (std::size_t i = 0; i < static_cast<std::size_t>(max_features_); ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(d - i));
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(static_cast<std::size_t>(max_features_));
    std::sort(candidates.begin(), candidates.end());
  }

  // impurity mass W * gini, gini = 2 p (1 - p)
  auto mass = [](double wt, double p) { return wt > 0 ? 2.0 * p * (wt - p) / wt : 0.0; };
  double parent = mass(total, pos);
  double best = parent - 1e-12;
  int best_feature = -1;
  double best_threshold = 0;

  std::vector<std::pair<double, std::size_t>> sorted(rows.size());
  for (std::size_t f : candidates) {
    for (std::size_t i = 0; i < rows.size(); ++i) sorted[i] = {x[rows[i]][f], rows[i]};
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().first == sorted.back().first) continue;
    double lw = 0, lp = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      std::size_t r = sorted[i - 1].second;
      lw += w[r];
      if (y[r]) lp += w[r];
      if (sorted[i].first == sorted[i - 1].first) continue;
      if (i < static_cast<std::size_t>(min_samples_leaf_) ||
          sorted.size() - i < static_cast<std::size_t>(min_samples_leaf_))
        continue;
      double m = mass(lw, lp) + mass(total - lw, pos - lp);
      if (m < best) {
        best = m;
        best_feature = static_cast<int>(f);
        double a = sorted[i - 1].first, b = sorted[i].first;
        double mid = a + (b - a) / 2;
        best_threshold = mid < b ? mid : a;
      }
    }
  }
  if (best_feature < 0) return id;

  std::vector<std::size_t> left, right;
  for (std::size_t r : rows) (x[r][static_cast<std::size_t>(best_feature)] <= best_threshold ? left : right).push_back(r);
  rows.clear();
  rows.shrink_to_fit();
  nodes_[id].feature = best_feature;
  nodes_[id].threshold = best_threshold;
  int l = build(x, y, w, left, depth + 1, rng);
  nodes_[id].left = l;
  int rgt = build(x, y, w, right, depth + 1, rng);
  nodes_[id].right = rgt;
  return id;
}

double DecisionTree::score(const std::vector<double>& x) const {
  if (nodes_.empty()) throw InvalidArgument("decision tree is not trained");
  int n = 0;
  while (nodes_[n].feature >= 0) {
    auto f = static_cast<std::size_t>(nodes_[n].feature);
    if (f >= x.size()) throw SchemaMismatch("row is narrower than the tree's features");
    n = x[f] <= nodes_[n].threshold ? nodes_[n].left : nodes_[n].right;
  }
  return nodes_[n].value;
}

nlohmann::json DecisionTree::to_json() const {
  std::vector<int> feature, left, right;
  std::vector<double> threshold, value;
  for (const auto& n : nodes_) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
  }
  return {{"max_depth", max_depth_}, {"min_samples_leaf", min_samples_leaf_}, {"max_features", max_features_},
          {"feature", feature},      {"threshold", threshold},              {"left", left},
          {"right", right},          {"value", value}};
}

void DecisionTree::from_json(const nlohmann::json& j) {
  max_depth_ = j.at("max_depth").get<int>();
  min_samples_leaf_ = j.at("min_samples_leaf").get<int>();
  max_features_ = j.at("max_features").get<int>();
  auto feature = j.at("feature").get<std::vector<int>>();
  auto threshold = j.at("threshold").get<std::vector<double>>();
  auto left = j.at("left").get<std::vector<int>>();
  auto right = j.at("right").get<std::vector<int>>();
  auto value = j.at("value").get<std::vector<double>>();
  std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n || n == 0)
    throw ParseError("inconsistent tree arrays");
  nodes_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (feature[i] >= 0 && (left[i] <= static_cast<int>(i) || right[i] <= static_cast<int>(i) ||
                            left[i] >= static_cast<int>(n) || right[i] >= static_cast<int>(n)))
      throw ParseError("tree node " + std::to_string(i) + " has invalid children");
    nodes_.push_back({feature[i], threshold[i], left[i], right[i], value[i]});
  }
}

// ---- random forest

RandomForest::RandomForest(const Params& p) : trees_(std::max(1, static_cast<int>(param(p, "trees", 100)))) {
  tree_params_ = {{"max_depth", param(p, "max_depth", 0)},
                  {"min_samples_leaf", param(p, "min_samples_leaf", 1)},
                  {"max_features", param(p, "max_features", 0)}};
}

void RandomForest::fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& weights, std::uint64_t seed) {
  if (x.empty()) throw InvalidArgument("cannot train on an empty dataset");
  Params tp = tree_params_;
  if (tp["max_features"] <= 0) tp["max_features"] = std::max(1.0, std::floor(std::sqrt(static_cast<double>(x[0].size()))));
  forest_.assign(static_cast<std::size_t>(trees_), DecisionTree(tp));

  // every tree draws from its own stream, so thread scheduling cannot change the result
  auto train_one = [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    std::vector<double> w(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) w[rng.below(x.size())] += 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) w[i] *= weights[i];
    forest_[t].fit(x, y, w, rng.next());
  };
  std::atomic<std::size_t> next{0};
  unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(trees_)));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (unsigned k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t t; (t = next++) < forest_.size();) {
        try {
          train_one(t);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

double RandomForest::score(const std::vector<double>& x) const {
  if (forest_.empty()) throw InvalidArgument("random forest is not trained");
  double s = 0;
  for (const auto& t : forest_) s += t.score(x);
  return s / static_cast<double>(forest_.size());
}

nlohmann::json RandomForest::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : forest_) trees.push_back(t.to_json());
  return {{"trees", trees_}, {"tree_params", tree_params_}, {"forest", trees}};
}

void RandomForest::from_json(const nlohmann::json& j) {
  trees_ = j.at("trees").get<int>();
  tree_params_ = j.at("tree_params").get<Params>();
  forest_.clear();
  for (const auto& t : j.at("forest")) {
    DecisionTree tree(tree_params_);
    tree.from_json(t);
    forest_.push_back(std::move(tree));
  }
  if (forest_.empty()) throw ParseError("random forest without trees");
}

}  // namespace reqcomp::ml

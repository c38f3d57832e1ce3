#include <algorithm>
#include <cmath>
#include <numeric>

#include "learners.h"
#include "reqcomp/util/errors.h"

namespace reqcomp::ml {

Mlp::Mlp(const Params& p)
    : hidden_(std::max(1, static_cast<int>(param(p, "hidden", 16)))),
      epochs_(std::max(1, static_cast<int>(param(p, "epochs", 200)))),
      lr_(param(p, "learning_rate", 0.01)),
      l2_(param(p, "l2", 1e-4)),
      batch_(std::max(1, static_cast<int>(param(p, "batch", 32)))) {}

void Mlp::fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
              const std::vector<double>& weights, std::uint64_t seed) {
  if (x.empty()) throw InvalidArgument("cannot train on an empty dataset");
  scaler_.fit(x);
  std::vector<std::vector<double>> z;
  for (const auto& r : x) z.push_back(scaler_.apply(r));
  in_ = z[0].size();
  auto h = static_cast<std::size_t>(hidden_);
  Rng rng(seed);
  double limit1 = std::sqrt(6.0 / static_cast<double>(in_ + h));
  double limit2 = std::sqrt(6.0 / static_cast<double>(h + 1));
  w1_.resize(h * in_);
  for (auto& v : w1_) v = rng.uniform(-limit1, limit1);
  b1_.assign(h, 0.0);
  w2_.resize(h);
  for (auto& v : w2_) v = rng.uniform(-limit2, limit2);
  b2_ = 0;

  // Adam state, one slot per parameter in the order w1, b1, w2, b2
  std::size_t np = w1_.size() + h + h + 1;
  std::vector<double> m(np, 0.0), v(np, 0.0), grad(np);
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long step = 0;
  double mean_w = std::accumulate(weights.begin(), weights.end(), 0.0) / static_cast<double>(weights.size());

  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> act(h);
  for (int epoch = 0; epoch < epochs_; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(batch_)) {
      std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(batch_));
      std::fill(grad.begin(), grad.end(), 0.0);
      double count = static_cast<double>(stop - start);
      for (std::size_t k = start; k < stop; ++k) {
        std::size_t i = order[k];
        const auto& xi = z[i];
        double out = b2_;
        for (std::size_t u = 0; u < h; ++u) {
          double s = b1_[u];
          for (std::size_t j = 0; j < in_; ++j) s += w1_[u * in_ + j] * xi[j];
          act[u] = std::tanh(s);
          out += w2_[u] * act[u];
        }
        double err = (sigmoid(out) - y[i]) * weights[i] / mean_w / count;
        for (std::size_t u = 0; u < h; ++u) {
          grad[w1_.size() + h + u] += err * act[u];
          double back = err * w2_[u] * (1 - act[u] * act[u]);
          grad[w1_.size() + u] += back;
          for (std::size_t j = 0; j < in_; ++j) grad[u * in_ + j] += back * xi[j];
        }
        grad[np - 1] += err;
      }
      ++step;
      double c1 = 1 - std::pow(beta1, static_cast<double>(step));
      double c2 = 1 - std::pow(beta2, static_cast<double>(step));
      auto update = [&](std::size_t slot, double& param, bool decay) {
        double g = grad[slot] + (decay ? l2_ * param : 0.0);
        m[slot] = beta1 * m[slot] + (1 - beta1) * g;
        v[slot] = beta2 * v[slot] + (1 - beta2) * g * g;
        param -= lr_ * (m[slot] / c1) / (std::sqrt(v[slot] / c2) + eps);
      };
      for (std::size_t p = 0; p < w1_.size(); ++p) update(p, w1_[p], true);
      for (std::size_t u = 0; u < h; ++u) update(w1_.size() + u, b1_[u], false);
      for (std::size_t u = 0; u < h; ++u) update(w1_.size() + h + u, w2_[u], true);
      update(np - 1, b2_, false);
    }
  }
}

double Mlp::score(const std::vector<double>& x) const {
  auto z = scaler_.apply(x);
  auto h = static_cast<std::size_t>(hidden_);
  double out = b2_;
  for (std::size_t u = 0; u < h; ++u) {
    double s = b1_[u];
    for (std::size_t j = 0; j < in_; ++j) s += w1_[u * in_ + j] * z[j];
    out += w2_[u] * std::tanh(s);
  }
  return sigmoid(out);
}

nlohmann::json Mlp::to_json() const {
  return {{"hidden", hidden_}, {"epochs", epochs_}, {"learning_rate", lr_}, {"l2", l2_},   {"batch", batch_},
          {"inputs", in_},     {"scaler", scaler_.to_json()},               {"w1", w1_}, {"b1", b1_},
          {"w2", w2_},         {"b2", b2_}};
}

void Mlp::from_json(const nlohmann::json& j) {
  hidden_ = j.at("hidden").get<int>();
  epochs_ = j.at("epochs").get<int>();
  lr_ = j.at("learning_rate").get<double>();
  l2_ = j.at("l2").get<double>();
  batch_ = j.at("batch").get<int>();
  in_ = j.at("inputs").get<std::size_t>();
  scaler_.from_json(j.at("scaler"));
  w1_ = j.at("w1").get<std::vector<double>>();
  b1_ = j.at("b1").get<std::vector<double>>();
  w2_ = j.at("w2").get<std::vector<double>>();
  b2_ = j.at("b2").get<double>();
  auto h = static_cast<std::size_t>(hidden_);
  if (w1_.size() != h * in_ || b1_.size() != h || w2_.size() != h) throw ParseError("MLP weight shapes disagree");
}

}  // namespace reqcomp::ml

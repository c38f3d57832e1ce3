#include <algorithm>
#include <cmath>
#include <numeric>

#include "learners.h"
#include "reqcomp/util/errors.h"

namespace reqcomp::ml {

LinearSvm::LinearSvm(const Params& p)
    : c_(param(p, "C", 1.0)), max_iter_(static_cast<int>(param(p, "max_iter", 1000))), tol_(param(p, "tol", 1e-3)) {
  if (!(c_ > 0)) throw ConfigError("SVM C must be positive");
}

void LinearSvm::fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                    const std::vector<double>& weights, std::uint64_t seed) {
  if (x.empty()) throw InvalidArgument("cannot train on an empty dataset");
  scaler_.fit(x);
  std::size_t n = x.size();
  std::vector<std::vector<double>> z;
  z.reserve(n);
  for (const auto& r : x) {
    auto s = scaler_.apply(r);
    s.push_back(1.0);  // bias as a regularised constant feature
    z.push_back(std::move(s));
  }
  std::size_t d = z[0].size();
  w_.assign(d, 0.0);
  std::vector<double> alpha(n, 0.0), qii(n), upper(n), sign(n);
  for (std::size_t i = 0; i < n; ++i) {
    qii[i] = std::inner_product(z[i].begin(), z[i].end(), z[i].begin(), 0.0);
    upper[i] = c_ * weights[i];
    sign[i] = y[i] ? 1.0 : -1.0;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (int iter = 0; iter < max_iter_; ++iter) {
    rng.shuffle(std::span(order));
    double pg_max = -INFINITY, pg_min = INFINITY;
    for (std::size_t i : order) {
      if (upper[i] <= 0) continue;
      double g = sign[i] * std::inner_product(w_.begin(), w_.end(), z[i].begin(), 0.0) - 1.0;
      double pg = g;
      if (alpha[i] <= 0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= upper[i]) {
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::abs(pg) < 1e-12) continue;
      double old = alpha[i];
      alpha[i] = std::clamp(alpha[i] - g / qii[i], 0.0, upper[i]);
      double delta = (alpha[i] - old) * sign[i];
      for (std::size_t j = 0; j < d; ++j) w_[j] += delta * z[i][j];
    }
    if (pg_max - pg_min < tol_) break;
  }
}

double LinearSvm::score(const std::vector<double>& x) const {
  auto z = scaler_.apply(x);
  double s = w_.back();
  for (std::size_t j = 0; j < z.size(); ++j) s += w_[j] * z[j];
  return s;
}

nlohmann::json LinearSvm::to_json() const {
  return {{"C", c_}, {"max_iter", max_iter_}, {"tol", tol_}, {"scaler", scaler_.to_json()}, {"w", w_}};
}

void LinearSvm::from_json(const nlohmann::json& j) {
  c_ = j.at("C").get<double>();
  max_iter_ = j.at("max_iter").get<int>();
  tol_ = j.at("tol").get<double>();
  scaler_.from_json(j.at("scaler"));
  w_ = j.at("w").get<std::vector<double>>();
}

}  // namespace reqcomp::ml

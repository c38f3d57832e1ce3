#include <cmath>

#include "learners.h"
#include "reqcomp/util/errors.h"

namespace reqcomp::ml {

namespace {

// Solves A x = b for symmetric positive definite A (row-major, n x n) by
// Cholesky. A is overwritten.
std::vector<double> solve_spd(std::vector<double>& a, std::vector<double> b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (d <= 0) d = 1e-12;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= a[i * n + k] * b[k];
    b[i] /= a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= a[k * n + i] * b[k];
    b[i] /= a[i * n + i];
  }
  return b;
}

double dot_with_intercept(const std::vector<double>& beta, const std::vector<double>& z) {
  double s = beta.back();
  for (std::size_t j = 0; j < z.size(); ++j) s += beta[j] * z[j];
  return s;
}

}  // namespace

LogisticRegression::LogisticRegression(const Params& p)
    : l2_(param(p, "l2", 1e-4)), max_iter_(static_cast<int>(param(p, "max_iter", 100))) {
  if (l2_ < 0) throw ConfigError("LR l2 must be non-negative");
}

void LogisticRegression::fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                             const std::vector<double>& weights, std::uint64_t) {
  if (x.empty()) throw InvalidArgument("cannot train on an empty dataset");
  scaler_.fit(x);
  std::vector<std::vector<double>> z;
  z.reserve(x.size());
  for (const auto& r : x) z.push_back(scaler_.apply(r));
  std::size_t d = z[0].size(), n = d + 1;
  double total_w = 0;
  for (double w : weights) total_w += w;

  // Penalised mean log-loss; the intercept gets a token ridge so the Newton
  // system stays definite when one class is absent.
  auto objective = [&](const std::vector<double>& beta) {
    double loss = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      double m = dot_with_intercept(beta, z[i]);
      double s = y[i] ? -m : m;  // loss = log(1 + e^s)
      loss += weights[i] * (s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)));
    }
    double reg = 0;
    for (std::size_t j = 0; j < d; ++j) reg += beta[j] * beta[j];
    return loss / total_w + 0.5 * l2_ * reg + 0.5 * 1e-8 * beta[d] * beta[d];
  };

  beta_.assign(n, 0.0);
  double f = objective(beta_);
  for (int iter = 0; iter < max_iter_; ++iter) {
    std::vector<double> grad(n, 0.0), hess(n * n, 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      double p = sigmoid(dot_with_intercept(beta_, z[i]));
      double g = weights[i] * (p - y[i]) / total_w;
      double h = weights[i] * std::max(p * (1 - p), 1e-12) / total_w;
      for (std::size_t a = 0; a < n; ++a) {
        double za = a < d ? z[i][a] : 1.0;
        grad[a] += g * za;
        if (za == 0.0) continue;
        for (std::size_t b = 0; b <= a; ++b) {
          double zb = b < d ? z[i][b] : 1.0;
          hess[a * n + b] += h * za * zb;
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < a; ++b) hess[b * n + a] = hess[a * n + b];
    }
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] += l2_ * beta_[j];
      hess[j * n + j] += l2_ + 1e-10;
    }
    grad[d] += 1e-8 * beta_[d];
    hess[d * n + d] += 1e-8;
    double gnorm = 0;
    for (double g : grad) gnorm = std::max(gnorm, std::abs(g));
    if (gnorm < 1e-10) break;

    auto step = solve_spd(hess, grad, n);
    // backtracking keeps the objective decreasing when the quadratic model overshoots
    double t = 1.0;
    std::vector<double> next(n);
    double f_next = f;
    for (int ls = 0; ls < 30; ++ls) {
      for (std::size_t a = 0; a < n; ++a) next[a] = beta_[a] - t * step[a];
      f_next = objective(next);
      if (f_next <= f) break;
      t *= 0.5;
    }
    if (f_next > f) break;
    beta_ = next;
    bool converged = f - f_next < 1e-12 * std::max(1.0, std::abs(f));
    f = f_next;
    if (converged) break;
  }
}

double LogisticRegression::score(const std::vector<double>& x) const {
  return sigmoid(dot_with_intercept(beta_, scaler_.apply(x)));
}

nlohmann::json LogisticRegression::to_json() const {
  return {{"l2", l2_}, {"max_iter", max_iter_}, {"scaler", scaler_.to_json()}, {"beta", beta_}};
}

void LogisticRegression::from_json(const nlohmann::json& j) {
  l2_ = j.at("l2").get<double>();
  max_iter_ = j.at("max_iter").get<int>();
  scaler_.from_json(j.at("scaler"));
  beta_ = j.at("beta").get<std::vector<double>>();
}

}  // namespace reqcomp::ml

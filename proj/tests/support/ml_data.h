#pragma once

#include <cstdint>

#include "reqcomp/ml/dataset.h"
#include "reqcomp/util/rng.h"

namespace reqcomp::testing {

// Two features; label is 1 iff x0 + x1 > 0, with a gap of `margin` around the
// boundary so the classes are linearly separable.
inline ml::Dataset separable_2d(std::size_t n, std::uint64_t seed, double margin = 0.5) {
  Rng rng(seed);
  ml::Dataset d;
  d.feature_names = {"x0", "x1"};
  while (d.size() < n) {
    double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    double s = a + b;
    if (std::abs(s) < margin) continue;
    d.x.push_back({a, b});
    d.y.push_back(s > 0 ? ml::kRelevant : ml::kNonRelevant);
  }
  return d;
}

// Overlapping Gaussian classes with `neg_per_pos` negatives per positive.
// Positives are centred at (1, 1), negatives at (-1, -1), unit variance.
inline ml::Dataset imbalanced_gaussians(std::size_t positives, std::size_t neg_per_pos, std::uint64_t seed) {
  Rng rng(seed);
  ml::Dataset d;
  d.feature_names = {"x0", "x1"};
  for (std::size_t i = 0; i < positives * (neg_per_pos + 1); ++i) {
    bool pos = i % (neg_per_pos + 1) == 0;
    double c = pos ? 1.0 : -1.0;
    d.x.push_back({c + rng.normal(), c + rng.normal()});
    d.y.push_back(pos ? ml::kRelevant : ml::kNonRelevant);
  }
  return d;
}

}  // namespace reqcomp::testing

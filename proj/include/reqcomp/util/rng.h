#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace reqcomp {

// Portable deterministic generator (xoshiro256**). Every draw helper below is
// implemented here rather than through <random> distributions, whose output
// is implementation-defined, so runs reproduce across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next();
  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

// Stable 64-bit mixing of a seed with a label (e.g. a document id), used to
// derive independent streams for sub-tasks.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace reqcomp

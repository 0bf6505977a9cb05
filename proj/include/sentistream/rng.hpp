#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sentistream {

// Deterministic RNG wrapper. std::uniform_int_distribution and friends are
// implementation-defined, so every draw that feeds a reproducibility
// contract (corpus bytes, shuffle order, parameter init) goes through the
// explicit mappings below instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, n). Modulo bias is irrelevant next to determinism here.
  std::uint64_t bounded(std::uint64_t n) { return n ? gen_() % n : 0; }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool chance(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(bounded(v.size()))];
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sentistream

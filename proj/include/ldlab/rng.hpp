// SPDX-FileCopyrightText: 2026 ldlab contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef LDLAB_RNG_HPP
#define LDLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace ldlab {

// splitmix64; self-contained so streams are bit-identical across toolchains
// (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// uniform in [a, b)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// uniform integer in [0, n)
  uint64_t uniform_int(uint64_t n) { return next_u64() % n; }

  /// standard normal (Box-Muller, one value per call for determinism)
  double normal() {
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// m distinct indices from [0, n), partial Fisher-Yates, sorted output
  std::vector<uint64_t> sample_without_replacement(uint64_t n, uint64_t m);

 private:
  uint64_t state_;
};

inline std::vector<uint64_t> Rng::sample_without_replacement(uint64_t n, uint64_t m) {
  std::vector<uint64_t> pool(n);
  for (uint64_t i = 0; i < n; ++i) pool[i] = i;
  for (uint64_t i = 0; i < m; ++i) {
    uint64_t j = i + uniform_int(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return pool;
}

}  // namespace ldlab

#endif

#pragma once

#include <cstdint>
#include <vector>

#include "matroid/subsets.hpp"

namespace matroid {

/// splitmix64: stateless mixing used to derive independent sub-seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix64(base ^ mix64(a ^ mix64(b)));
}

/// Self-contained xorshift-style generator so that seeded runs do not
/// depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next() {
    state_ = mix64(state_ + 0x9e3779b97f4a7c15ULL);
    return state_;
  }

  /// Uniform integer in [0, m) by rejection.
  std::uint64_t below(std::uint64_t m) {
    if (m == 0) return 0;
    std::uint64_t limit = (~std::uint64_t{0} / m) * m;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % m;
  }

  bool coin() { return next() & 1u; }

 private:
  std::uint64_t state_;
};

/// Exactly uniform t-subset of {0..n-1} via a partial Fisher-Yates shuffle.
inline Subset random_k_subset(Rng& rng, int n, int t) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  Subset s = 0;
  for (int i = 0; i < t; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
    s = subset_with(s, pool[i]);
  }
  return s;
}

}  // namespace matroid

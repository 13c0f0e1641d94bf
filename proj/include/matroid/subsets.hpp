#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace matroid {

/// A subset of a ground set {0,...,n-1}, n <= 64, as a bitmask.
/// Element e is in the subset iff bit e is set.
using Subset = std::uint64_t;

constexpr int kMaxGroundSize = 64;

inline int subset_size(Subset s) { return std::popcount(s); }

inline bool subset_test(Subset s, int e) { return (s >> e) & 1u; }

inline Subset subset_with(Subset s, int e) { return s | (Subset{1} << e); }

inline Subset subset_without(Subset s, int e) { return s & ~(Subset{1} << e); }

inline Subset full_set(int n) {
  if (n < 0 || n > kMaxGroundSize)
    throw std::invalid_argument("ground set size out of range");
  return n == kMaxGroundSize ? ~Subset{0} : (Subset{1} << n) - 1;
}

inline std::vector<int> subset_elements(Subset s) {
  std::vector<int> out;
  while (s != 0) {
    int e = std::countr_zero(s);
    out.push_back(e);
    s &= s - 1;
  }
  return out;
}

template <typename It>
Subset subset_of(It begin, It end) {
  Subset s = 0;
  for (It it = begin; it != end; ++it) s = subset_with(s, *it);
  return s;
}

inline Subset subset_of(std::initializer_list<int> elems) {
  return subset_of(elems.begin(), elems.end());
}

/// Smallest k-subset in numeric bitmask order (the lowest k bits).
inline Subset first_k_subset(int k) { return full_set(k); }

/// Next k-subset after `s` in ascending bitmask order (Gosper's hack),
/// or nullopt once the largest k-subset of {0..n-1} has been passed.
inline std::optional<Subset> next_k_subset(Subset s, int n) {
  if (s == 0) return std::nullopt;  // the empty set is the only 0-subset
  Subset c = s & (~s + 1);
  Subset r = s + c;
  Subset next = r | (((s ^ r) >> 2) / c);
  if (next > full_set(n)) return std::nullopt;
  return next;
}

/// Calls f(S) for every k-subset of {0..n-1} in ascending bitmask order.
/// f returns false to stop early; the function returns false iff stopped.
template <typename F>
bool for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return true;
  Subset s = first_k_subset(k);
  while (true) {
    if (!f(s)) return false;
    auto next = next_k_subset(s, n);
    if (!next) return true;
    s = *next;
  }
}

/// Calls f(S) for every subset of {0..n-1} in ascending bitmask order.
template <typename F>
bool for_each_subset(int n, F&& f) {
  Subset all = full_set(n);
  Subset s = 0;
  while (true) {
    if (!f(s)) return false;
    if (s == all) return true;
    ++s;
  }
}

/// Renders a subset as "{a,b,c}" with `base`-based element labels.
inline std::string format_subset(Subset s, int base = 1) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int e : subset_elements(s)) {
    if (!first) out << ',';
    out << (e + base);
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace matroid

#pragma once

#include <string>
#include <vector>

#include "matroid/oracle.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// An l-matroid-intersection instance: l >= 2 membership oracles over one
/// ground set.  The question is whether the matroids share a common basis.
struct LMIInstance {
  int ground_size = 0;
  std::vector<MatroidOracle> matroids;

  void validate() const {
    if (matroids.size() < 2)
      throw std::invalid_argument("an intersection instance needs >= 2 matroids");
    for (const auto& m : matroids) {
      if (m.ground_size() != ground_size)
        throw std::invalid_argument("matroids disagree on the ground set");
    }
  }

  QueryReport query_counts() const {
    QueryReport r;
    for (const auto& m : matroids) r.add(m.label(), m.queries());
    return r;
  }
};

/// An exact matroid intersection instance: two matroids over one ground set
/// partitioned into red and blue, and a target k.  The question is whether a
/// common basis with exactly k red elements exists.
struct EMIInstance {
  int ground_size = 0;
  Subset red = 0;
  int k = 0;
  std::vector<MatroidOracle> matroids;  // exactly two

  void validate() const {
    if (matroids.size() != 2)
      throw std::invalid_argument("an exact intersection instance needs 2 matroids");
    for (const auto& m : matroids) {
      if (m.ground_size() != ground_size)
        throw std::invalid_argument("matroids disagree on the ground set");
    }
    if ((red & ~full_set(ground_size)) != 0)
      throw std::invalid_argument("red set outside the ground set");
    if (k < 0 || k > ground_size)
      throw std::invalid_argument("cardinality target out of range");
  }

  QueryReport query_counts() const {
    QueryReport r;
    for (const auto& m : matroids) r.add(m.label(), m.queries());
    return r;
  }
};

}  // namespace matroid

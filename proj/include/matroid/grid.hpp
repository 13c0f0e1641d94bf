#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "matroid/errors.hpp"
#include "matroid/oracle.hpp"
#include "matroid/subsets.hpp"
#include "matroid/zoo.hpp"

namespace matroid {

/// A point of the grid [N]^d; coordinates are 1-based.
using GridPoint = std::vector<int>;

/// Geometry of the grid [N]^d, with the canonical bijection between grid
/// points and {1..N^d}: lexicographic row-major order, dimension 1 most
/// significant.  Flat indices (0-based) are one less than bijection indices,
/// so grid subsets share the bitmask representation of [N^d] subsets.
class GridShape {
 public:
  GridShape(int side, int dims) : side_(side), dims_(dims) {
    if (side < 2 || dims < 2) throw std::invalid_argument("grid needs N,d >= 2");
    std::int64_t total = 1;
    for (int j = 0; j < dims; ++j) {
      total *= side;
      if (total > kMaxGroundSize)
        throw GuardError("grid has more than 64 points");
    }
    total_ = static_cast<int>(total);
  }

  int side() const { return side_; }
  int dims() const { return dims_; }
  int total() const { return total_; }

  int flat_index(const GridPoint& p) const {
    if (static_cast<int>(p.size()) != dims_)
      throw std::invalid_argument("grid point has wrong dimension");
    int f = 0;
    for (int j = 0; j < dims_; ++j) {
      if (p[j] < 1 || p[j] > side_)
        throw std::invalid_argument("grid coordinate out of range");
      f = f * side_ + (p[j] - 1);
    }
    return f;
  }

  GridPoint point_of(int flat) const {
    if (flat < 0 || flat >= total_)
      throw std::invalid_argument("flat index out of range");
    GridPoint p(dims_);
    for (int j = dims_ - 1; j >= 0; --j) {
      p[j] = flat % side_ + 1;
      flat /= side_;
    }
    return p;
  }

  /// pi(m) for m in {1..N^d}.
  GridPoint bijection(int m) const { return point_of(m - 1); }
  /// pi^{-1}(p) in {1..N^d}.
  int bijection_inverse(const GridPoint& p) const { return flat_index(p) + 1; }

  /// Coordinate j (1-based dimension) of the grid point with this flat index.
  int coordinate(int flat, int dim) const {
    int div = 1;
    for (int j = dims_; j > dim; --j) div *= side_;
    return (flat / div) % side_ + 1;
  }

  std::string format_point(int flat) const {
    GridPoint p = point_of(flat);
    std::string out = "(";
    for (int j = 0; j < dims_; ++j) {
      if (j) out += ',';
      out += std::to_string(p[j]);
    }
    return out + ")";
  }

 private:
  int side_;
  int dims_;
  int total_;
};

/// The limit matrix of a grid: entries L(i,j) bound the number of chosen grid
/// points whose j-th coordinate equals i.  A matrix is simple-uniform when
/// every entry lies in {0..N}, all column sums agree, and the common sum K
/// satisfies 2 <= K <= N^d - 1.
class SUMatrix {
 public:
  SUMatrix(int side, int dims, std::vector<int> row_major_entries)
      : shape_(side, dims), entries_(std::move(row_major_entries)) {
    if (static_cast<int>(entries_.size()) != side * dims)
      throw std::invalid_argument("limit matrix has wrong entry count");
  }

  static SUMatrix filled(int side, int dims, int value) {
    return SUMatrix(side, dims, std::vector<int>(side * dims, value));
  }

  const GridShape& shape() const { return shape_; }
  int side() const { return shape_.side(); }
  int dims() const { return shape_.dims(); }

  /// L(value, dim), both 1-based.
  int limit(int value, int dim) const {
    return entries_[(value - 1) * dims() + (dim - 1)];
  }

  int column_sum(int dim) const {
    int s = 0;
    for (int i = 1; i <= side(); ++i) s += limit(i, dim);
    return s;
  }

  /// The common column sum; only meaningful for simple-uniform matrices.
  int rank() const { return column_sum(1); }

  bool is_simple_uniform() const {
    for (int e : entries_)
      if (e < 0 || e > side()) return false;
    const int k = column_sum(1);
    for (int j = 2; j <= dims(); ++j)
      if (column_sum(j) != k) return false;
    return 2 <= k && k <= shape_.total() - 1;
  }

  void require_simple_uniform() const {
    if (!is_simple_uniform())
      throw std::invalid_argument("limit matrix is not simple-uniform");
  }

  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const SUMatrix& o) const {
    return side() == o.side() && dims() == o.dims() && entries_ == o.entries_;
  }

 private:
  GridShape shape_;
  std::vector<int> entries_;
};

/// True iff S hits every limit exactly: |{e in S : e_j = i}| = L(i,j) for all
/// i, j.
inline bool is_l_perfect(Subset s, const SUMatrix& l) {
  const GridShape& g = l.shape();
  std::vector<int> counts(static_cast<std::size_t>(g.side()) * g.dims(), 0);
  for (int f : subset_elements(s)) {
    for (int j = 1; j <= g.dims(); ++j)
      ++counts[(g.coordinate(f, j) - 1) * g.dims() + (j - 1)];
  }
  for (int i = 1; i <= g.side(); ++i) {
    for (int j = 1; j <= g.dims(); ++j) {
      if (counts[(i - 1) * g.dims() + (j - 1)] != l.limit(i, j)) return false;
    }
  }
  return true;
}

/// The (L,j)-partition matroid of the grid: at most L(i,j) chosen points with
/// j-th coordinate equal to i.
inline MatroidOracle grid_partition_matroid(const SUMatrix& l, int dim) {
  l.require_simple_uniform();
  if (dim < 1 || dim > l.dims())
    throw std::invalid_argument("dimension index out of range");
  const GridShape& g = l.shape();
  std::vector<Subset> blocks(g.side(), 0);
  for (int f = 0; f < g.total(); ++f)
    blocks[g.coordinate(f, dim) - 1] = subset_with(blocks[g.coordinate(f, dim) - 1], f);
  std::vector<int> bounds(g.side());
  for (int i = 1; i <= g.side(); ++i) bounds[i - 1] = l.limit(i, dim);
  return partition_matroid(g.total(), std::move(blocks), std::move(bounds),
                           "grid-partition[j=" + std::to_string(dim) + "]");
}

/// A counted membership oracle for a family of grid subsets.
class SetFamilyOracle {
 public:
  SetFamilyOracle(GridShape shape, std::string label,
                  std::function<bool(Subset)> pred)
      : shape_(shape), state_(std::make_shared<State>()) {
    state_->label = std::move(label);
    state_->pred = std::move(pred);
  }

  const GridShape& shape() const { return shape_; }
  const std::string& label() const { return state_->label; }

  bool contains(Subset s) const {
    ++state_->queries;
    return state_->pred(s);
  }

  std::uint64_t queries() const { return state_->queries; }

 private:
  struct State {
    std::string label;
    std::function<bool(Subset)> pred;
    std::uint64_t queries = 0;
  };
  GridShape shape_;
  std::shared_ptr<State> state_;
};

inline SetFamilyOracle explicit_set_family(const GridShape& shape,
                                           std::vector<Subset> members,
                                           std::string label = "family") {
  return SetFamilyOracle(shape, std::move(label), [members = std::move(members)](Subset s) {
    for (Subset m : members)
      if (m == s) return true;
    return false;
  });
}

/// The paving matroid over the grid defined by a simple-uniform matrix L and
/// a family oracle: with K the common column sum, sets smaller than K are
/// independent, larger are dependent, and a K-set is a basis iff it is not
/// L-perfect, or it is L-perfect and belongs to the family.  The checks run
/// in that order, so each membership query costs at most one family query.
inline MatroidOracle g_matroid(const SUMatrix& l, const SetFamilyOracle& family,
                               std::string label = "g-matroid") {
  l.require_simple_uniform();
  if (family.shape().side() != l.side() || family.shape().dims() != l.dims())
    throw std::invalid_argument("family oracle grid does not match the limit matrix");
  const int k = l.rank();
  SUMatrix lc = l;
  SetFamilyOracle fam = family;
  return MatroidOracle(l.shape().total(), std::move(label),
                       [lc = std::move(lc), fam = std::move(fam), k](Subset s) {
                         const int size = subset_size(s);
                         if (size < k) return true;
                         if (size > k) return false;
                         if (!is_l_perfect(s, lc)) return true;
                         return fam.contains(s);
                       });
}

/// The coordinate-count matrix of a grid subset (the limits that S meets with
/// equality).  Defined for 2 <= |S| <= N^d - 1; the result is simple-uniform
/// and S is perfect for it.
inline SUMatrix su_matrix_for_set(const GridShape& g, Subset s) {
  const int size = subset_size(s);
  if (size < 2 || size > g.total() - 1)
    throw GuardError("coordinate-count matrix needs 2 <= |S| <= N^d - 1");
  std::vector<int> entries(static_cast<std::size_t>(g.side()) * g.dims(), 0);
  for (int f : subset_elements(s)) {
    for (int j = 1; j <= g.dims(); ++j)
      ++entries[(g.coordinate(f, j) - 1) * g.dims() + (j - 1)];
  }
  return SUMatrix(g.side(), g.dims(), std::move(entries));
}

namespace detail {

inline bool enumerate_su_rec(int side, int dims, std::vector<int>& entries,
                             std::vector<int>& colsum, int pos, int max_sum,
                             const std::function<bool(const SUMatrix&)>& visit) {
  const int total = side * dims;
  if (pos == total) {
    const int k = colsum[0];
    for (int j = 1; j < dims; ++j)
      if (colsum[j] != k) return true;
    if (k < 2 || k > max_sum) return true;
    return visit(SUMatrix(side, dims, entries));
  }
  const int col = pos % dims;
  const int row = pos / dims;
  const int rows_left_after = side - row - 1;
  for (int v = 0; v <= side; ++v) {
    entries[pos] = v;
    colsum[col] += v;
    // Feasibility window: every column must still be able to reach a common
    // sum within [2, N^d - 1].
    int lo = 2, hi = max_sum;
    for (int j = 0; j < dims; ++j) {
      int remaining = (j > col ? rows_left_after + 1 : rows_left_after) * side;
      lo = std::max(lo, colsum[j]);
      hi = std::min(hi, colsum[j] + remaining);
    }
    if (lo <= hi) {
      if (!enumerate_su_rec(side, dims, entries, colsum, pos + 1, max_sum, visit)) {
        colsum[col] -= v;
        entries[pos] = 0;
        return false;
      }
    }
    colsum[col] -= v;
  }
  entries[pos] = 0;
  return true;
}

}  // namespace detail

/// Visits every simple-uniform N x d matrix exactly once, in lexicographic
/// order of the row-major entry vector.  The visitor returns false to stop;
/// the function returns false iff it was stopped.  Guarded to N^d <= 36.
inline bool enumerate_su_matrices(int side, int dims,
                                  const std::function<bool(const SUMatrix&)>& visit) {
  if (side < 2 || dims < 2) throw std::invalid_argument("grid needs N,d >= 2");
  std::int64_t total = 1;
  for (int j = 0; j < dims; ++j) total *= side;
  if (total > 36) throw GuardError("SU matrix enumeration is capped at N^d <= 36");
  std::vector<int> entries(static_cast<std::size_t>(side) * dims, 0);
  std::vector<int> colsum(dims, 0);
  return detail::enumerate_su_rec(side, dims, entries, colsum, 0,
                                  static_cast<int>(total) - 1, visit);
}

inline std::vector<SUMatrix> all_su_matrices(int side, int dims) {
  std::vector<SUMatrix> out;
  enumerate_su_matrices(side, dims, [&out](const SUMatrix& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

}  // namespace matroid

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matroid/core.hpp"
#include "matroid/errors.hpp"
#include "matroid/es.hpp"
#include "matroid/grid.hpp"
#include "matroid/instances.hpp"

namespace matroid {

/// Reduced l-matroid-intersection instance of an Empty Set instance and a
/// simple-uniform matrix L: the ground set is the grid [N]^d with d = l-1 and
/// N^d = n, and the matroids are the family matroid of L and the projected
/// family, followed by the d grid partition matroids of L.  The canonical
/// bijection identifies universe element m with flat grid index m-1, so
/// subsets keep their bitmask representation; each family-matroid query
/// forwards at most one query to the Empty Set oracle.
inline LMIInstance reduce_es_to_lmi(const EmptySetInstance& es, const SUMatrix& l,
                                    int ell) {
  if (ell < 3) throw std::invalid_argument("reduction needs l >= 3");
  if (l.dims() != ell - 1)
    throw std::invalid_argument("limit matrix dimension must equal l-1");
  l.require_simple_uniform();
  if (l.shape().total() != es.universe_size())
    throw std::invalid_argument("grid size does not match the universe");

  SetFamilyOracle projected(l.shape(), "F",
                            [es](Subset t) { return es.family_contains(t); });

  LMIInstance inst;
  inst.ground_size = l.shape().total();
  inst.matroids.push_back(g_matroid(l, projected));
  for (int j = 1; j <= l.dims(); ++j)
    inst.matroids.push_back(grid_partition_matroid(l, j));
  inst.validate();
  return inst;
}

/// Result of the Empty Set -> exact matroid intersection reduction, together
/// with the book-keeping needed to translate witnesses back.
struct EmiReduction {
  EMIInstance instance;
  int rows = 0;  // universe size n; the ground set is 2n elements

  /// Element 2r is the red point (r+1, 1); element 2r+1 is the blue point
  /// (r+1, 2).
  std::string element_label(int e) const {
    int row = e / 2 + 1;
    return "(" + std::to_string(row) + "," + (e % 2 == 0 ? "1" : "2") + ")";
  }

  /// Maps a ground subset of the reduced instance back to the universe set
  /// of its red rows.
  Subset red_rows(Subset t) const {
    Subset s = 0;
    for (int e : subset_elements(t))
      if (e % 2 == 0) s = subset_with(s, e / 2);
    return s;
  }

  /// X(S): red points for rows in s, blue points for rows outside it.
  Subset x_of(Subset s) const {
    Subset t = 0;
    for (int r = 0; r < rows; ++r)
      t = subset_with(t, subset_test(s, r) ? 2 * r : 2 * r + 1);
    return t;
  }
};

/// Reduced exact-matroid-intersection instance of an Empty Set instance
/// (n >= 3).  Over the auxiliary grid [n]^2, the limit matrix has an all-ones
/// first column and second column (k, n-k, 0, ..., 0); the ground set is the
/// first two grid columns (red = column 1, blue = column 2), the matroids are
/// the restrictions of the (L,1) grid partition matroid and of the family
/// matroid of {X(S) : S in F}, and the cardinality target is k.
inline EmiReduction reduce_es_to_emi(const EmptySetInstance& es) {
  const int n = es.universe_size();
  const int k = es.cardinality_target();
  if (n < 3) throw GuardError("the exact-intersection reduction needs n >= 3");
  if (n > 8)
    throw GuardError("the auxiliary n x n grid must fit a 64-bit subset (n <= 8)");

  std::vector<int> entries(static_cast<std::size_t>(n) * 2, 0);
  for (int i = 0; i < n; ++i) entries[i * 2] = 1;
  entries[0 * 2 + 1] = k;
  entries[1 * 2 + 1] = n - k;
  SUMatrix l(n, 2, std::move(entries));
  l.require_simple_uniform();
  const GridShape& g = l.shape();

  // A grid set is in {X(S) : S in F} iff it picks exactly one of the first
  // two columns per row and its red rows form a member of F.  Only queries of
  // that shape reach the Empty Set oracle.
  SetFamilyOracle family(g, "F", [es, g, n](Subset t) {
    Subset red_rows = 0;
    int picked = 0;
    for (int f : subset_elements(t)) {
      GridPoint p = g.point_of(f);
      if (p[1] > 2) return false;
      ++picked;
      if (p[1] == 1) red_rows = subset_with(red_rows, p[0] - 1);
    }
    if (picked != n) return false;
    for (int r = 1; r <= n; ++r) {
      bool red = subset_test(t, g.flat_index({r, 1}));
      bool blue = subset_test(t, g.flat_index({r, 2}));
      if (red == blue) return false;
    }
    return es.family_contains(red_rows);
  });

  Subset e = 0;
  for (int r = 1; r <= n; ++r) {
    e = subset_with(e, g.flat_index({r, 1}));
    e = subset_with(e, g.flat_index({r, 2}));
  }
  Minor partition_part = restrict_to(grid_partition_matroid(l, 1), e);
  Minor family_part = restrict_to(g_matroid(l, family), e);

  EmiReduction red;
  red.rows = n;
  red.instance.ground_size = 2 * n;
  red.instance.k = k;
  Subset red_mask = 0;
  for (int r = 0; r < n; ++r) red_mask = subset_with(red_mask, 2 * r);
  red.instance.red = red_mask;
  red.instance.matroids.push_back(partition_part.oracle);
  red.instance.matroids.push_back(family_part.oracle);
  red.instance.validate();
  return red;
}

}  // namespace matroid

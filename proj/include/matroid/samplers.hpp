#pragma once

#include <vector>

#include "matroid/grid.hpp"
#include "matroid/instances.hpp"
#include "matroid/oracle.hpp"
#include "matroid/rng.hpp"
#include "matroid/zoo.hpp"

namespace matroid {

/// Seeded matroids drawn from the constructor zoo, for property sweeps and
/// cross-solver checks.
inline MatroidOracle random_zoo_matroid(Rng& rng, int n) {
  switch (rng.below((n == 4 || n == 9) ? 5 : 4)) {
    case 0:
      return uniform_matroid(n, static_cast<int>(rng.below(n + 1)));
    case 1: {
      int block_count = 1 + static_cast<int>(rng.below(3));
      std::vector<Subset> blocks(block_count, 0);
      for (int e = 0; e < n; ++e) {
        int b = static_cast<int>(rng.below(block_count));
        blocks[b] = subset_with(blocks[b], e);
      }
      std::vector<int> bounds(block_count);
      for (int& b : bounds) b = static_cast<int>(rng.below(3));
      return partition_matroid(n, std::move(blocks), std::move(bounds));
    }
    case 2:
    case 3: {
      int vertices = 2 + static_cast<int>(rng.below(4));
      Graph g;
      g.vertex_count = vertices;
      for (int e = 0; e < n; ++e) {
        int u = static_cast<int>(rng.below(vertices));
        int v = static_cast<int>(rng.below(vertices - 1));
        if (v >= u) ++v;
        g.edges.emplace_back(u, v);
      }
      MatroidOracle graphic = graphic_matroid(g);
      if (rng.coin()) return graphic;
      return truncate(graphic, static_cast<int>(rng.below(vertices)));
    }
    default: {
      int side = n == 4 ? 2 : 3;
      std::vector<SUMatrix> all = all_su_matrices(side, 2);
      const SUMatrix& l = all[rng.below(all.size())];
      std::vector<Subset> members;
      for_each_k_subset(n, l.rank(), [&](Subset s) {
        if (rng.coin()) members.push_back(s);
        return true;
      });
      return g_matroid(l, explicit_set_family(l.shape(), std::move(members)));
    }
  }
}

inline LMIInstance random_lmi_instance(Rng& rng, int n, int ell) {
  LMIInstance inst;
  inst.ground_size = n;
  for (int i = 0; i < ell; ++i) inst.matroids.push_back(random_zoo_matroid(rng, n));
  inst.validate();
  return inst;
}

inline EMIInstance random_emi_instance(Rng& rng, int n) {
  EMIInstance inst;
  inst.ground_size = n;
  inst.matroids.push_back(random_zoo_matroid(rng, n));
  inst.matroids.push_back(random_zoo_matroid(rng, n));
  inst.red = rng.next() & full_set(n);
  inst.k = static_cast<int>(rng.below(n + 1));
  inst.validate();
  return inst;
}

}  // namespace matroid

#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "matroid/oracle.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// Uniform matroid U(n,k): independent iff |S| <= k.
inline MatroidOracle uniform_matroid(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("uniform matroid needs 0 <= k <= n");
  return MatroidOracle(n, "uniform(" + std::to_string(n) + "," + std::to_string(k) + ")",
                       [k](Subset s) { return subset_size(s) <= k; });
}

/// Free matroid: every subset independent.
inline MatroidOracle free_matroid(int n) { return uniform_matroid(n, n); }

/// Partition matroid: blocks must partition {0..n-1}; independent iff
/// |S ∩ block_i| <= bound_i for every block.
inline MatroidOracle partition_matroid(int n, std::vector<Subset> blocks,
                                       std::vector<int> bounds,
                                       std::string label = "partition") {
  if (blocks.size() != bounds.size())
    throw std::invalid_argument("one bound per block required");
  Subset seen = 0;
  for (Subset b : blocks) {
    if ((b & seen) != 0) throw std::invalid_argument("partition blocks overlap");
    seen |= b;
  }
  if (seen != full_set(n))
    throw std::invalid_argument("partition blocks do not cover the ground set");
  for (int b : bounds)
    if (b < 0) throw std::invalid_argument("negative block bound");
  return MatroidOracle(n, std::move(label),
                       [blocks = std::move(blocks), bounds = std::move(bounds)](Subset s) {
                         for (std::size_t i = 0; i < blocks.size(); ++i) {
                           if (subset_size(s & blocks[i]) > bounds[i]) return false;
                         }
                         return true;
                       });
}

/// An undirected multigraph on vertices 0..vertex_count-1.  Parallel edges are
/// allowed (a doubled edge is a cycle); self-loops are not.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

namespace detail {
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  // Returns false if u and v were already connected.
  bool unite(int u, int v) {
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent_[ru] = rv;
    return true;
  }

 private:
  std::vector<int> parent_;
};
}  // namespace detail

/// Graphic matroid: the ground set is the edge list, independent iff acyclic.
/// The union-find is rebuilt per query; oracle calls are independent.
inline MatroidOracle graphic_matroid(const Graph& g, std::string label = "graphic") {
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not supported");
  }
  const int m = static_cast<int>(g.edges.size());
  return MatroidOracle(m, std::move(label),
                       [edges = g.edges, nv = g.vertex_count](Subset s) {
                         detail::UnionFind uf(nv);
                         for (int e : subset_elements(s)) {
                           if (!uf.unite(edges[e].first, edges[e].second)) return false;
                         }
                         return true;
                       });
}

/// Truncation of a matroid to rank k: independent iff inner-independent and
/// |S| <= k.  The size check short-circuits, so oversized queries cost no
/// inner query.
inline MatroidOracle truncate(const MatroidOracle& m, int k) {
  if (k < 0) throw std::invalid_argument("truncation rank must be non-negative");
  MatroidOracle inner = m;
  return MatroidOracle(m.ground_size(), m.label() + "|trunc" + std::to_string(k),
                       [inner, k](Subset s) {
                         return subset_size(s) <= k && inner.contains(s);
                       });
}

}  // namespace matroid

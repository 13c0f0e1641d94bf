#pragma once

#include <array>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matroid/errors.hpp"
#include "matroid/instances.hpp"
#include "matroid/subsets.hpp"
#include "matroid/zoo.hpp"

namespace matroid {

/// A 3-dimensional matching instance: triplets over [m]^3; the question is
/// whether m pairwise coordinate-disjoint triplets exist.
struct ThreeDMInstance {
  int side = 0;
  std::vector<std::array<int, 3>> triplets;

  void validate() const {
    if (side < 1) throw std::invalid_argument("side size must be >= 1");
    if (triplets.empty()) throw std::invalid_argument("triplet list is empty");
    if (triplets.size() > kMaxGroundSize)
      throw GuardError("more than 64 triplets");
    std::set<std::array<int, 3>> seen;
    for (const auto& t : triplets) {
      for (int c : t)
        if (c < 1 || c > side)
          throw std::invalid_argument("triplet coordinate out of range");
      if (!seen.insert(t).second)
        throw std::invalid_argument("duplicate triplet");
    }
  }
};

/// A directed graph: ordered arcs, no self-loops.
struct Digraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> arcs;

  void validate() const {
    if (vertex_count < 2) throw std::invalid_argument("need >= 2 vertices");
    if (arcs.size() > kMaxGroundSize) throw GuardError("more than 64 arcs");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : arcs) {
      if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
        throw std::invalid_argument("arc endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop");
      if (!seen.insert({u, v}).second)
        throw std::invalid_argument("duplicate arc");
    }
  }
};

namespace detail {

/// A same-ground instance with no common basis, used when an encoder has
/// already determined infeasibility.  Mismatched uniform ranks rule out any
/// common basis (all bases of one matroid are empty, of the others not).
inline LMIInstance no_instance(int ground_size) {
  LMIInstance inst;
  inst.ground_size = ground_size;
  inst.matroids.push_back(uniform_matroid(ground_size, 0));
  inst.matroids.push_back(uniform_matroid(ground_size, 1));
  inst.matroids.push_back(uniform_matroid(ground_size, 1));
  return inst;
}

}  // namespace detail

/// Encodes 3-dimensional matching as a 3-matroid intersection over the
/// triplet list: for each coordinate, a partition matroid grouping triplets
/// by their value there (one per value), truncated to m.  A common basis is
/// then exactly a perfect matching.  When some value appears in no triplet a
/// perfect matching is impossible and the ranks would degenerate, so the
/// encoder emits a canonical no-instance over the same ground set instead.
inline LMIInstance encode_3dm(const ThreeDMInstance& inst) {
  inst.validate();
  const int n = static_cast<int>(inst.triplets.size());
  const int m = inst.side;

  for (int coord = 0; coord < 3; ++coord) {
    std::vector<bool> used(m + 1, false);
    for (const auto& t : inst.triplets) used[t[coord]] = true;
    for (int a = 1; a <= m; ++a)
      if (!used[a]) return detail::no_instance(n);
  }

  LMIInstance out;
  out.ground_size = n;
  for (int coord = 0; coord < 3; ++coord) {
    std::vector<Subset> blocks(m, 0);
    for (int t = 0; t < n; ++t) {
      int a = inst.triplets[t][coord];
      blocks[a - 1] = subset_with(blocks[a - 1], t);
    }
    std::vector<int> bounds(m, 1);
    MatroidOracle part = partition_matroid(
        n, std::move(blocks), std::move(bounds),
        "3dm-coordinate" + std::to_string(coord + 1));
    out.matroids.push_back(truncate(part, m));
  }
  out.validate();
  return out;
}

/// Encodes directed Hamiltonian path as a 3-matroid intersection over the arc
/// list: out-degree and in-degree partition matroids (bound one per vertex)
/// truncated to |V|-1, plus the graphic matroid of the underlying undirected
/// multigraph (antiparallel arcs stay distinct parallel edges, so a 2-cycle
/// is dependent).  A Hamiltonian path needs |V|-1 distinct out-vertices,
/// |V|-1 distinct in-vertices, and a connected underlying graph; when any of
/// these fails the encoder emits a canonical no-instance (over a singleton
/// dummy ground if the arc list is empty).
inline LMIInstance encode_hampath(const Digraph& g) {
  g.validate();
  const int nv = g.vertex_count;
  const int n = static_cast<int>(g.arcs.size());
  if (n == 0) return detail::no_instance(1);

  std::vector<bool> has_out(nv, false), has_in(nv, false);
  for (auto [u, v] : g.arcs) {
    has_out[u] = true;
    has_in[v] = true;
  }
  int out_vertices = 0, in_vertices = 0;
  for (int v = 0; v < nv; ++v) {
    out_vertices += has_out[v] ? 1 : 0;
    in_vertices += has_in[v] ? 1 : 0;
  }
  detail::UnionFind uf(nv);
  int components = nv;
  for (auto [u, v] : g.arcs)
    if (uf.unite(u, v)) --components;
  if (out_vertices < nv - 1 || in_vertices < nv - 1 || components > 1)
    return detail::no_instance(n);

  auto degree_matroid = [&](bool by_tail, const std::string& label) {
    std::vector<Subset> blocks(nv, 0);
    for (int a = 0; a < n; ++a) {
      int v = by_tail ? g.arcs[a].first : g.arcs[a].second;
      blocks[v] = subset_with(blocks[v], a);
    }
    std::vector<int> bounds(nv, 1);
    return truncate(partition_matroid(n, std::move(blocks), std::move(bounds), label),
                    nv - 1);
  };

  Graph underlying;
  underlying.vertex_count = nv;
  for (auto [u, v] : g.arcs) underlying.edges.emplace_back(u, v);

  LMIInstance out;
  out.ground_size = n;
  out.matroids.push_back(degree_matroid(true, "out-degree"));
  out.matroids.push_back(degree_matroid(false, "in-degree"));
  out.matroids.push_back(graphic_matroid(underlying, "underlying-graphic"));
  out.validate();
  return out;
}

/// Triplet file: an "m" header line, then one "a b c" line per triplet
/// (1-based values).  Blank lines and '#' comments are skipped.
inline ThreeDMInstance parse_3dm(std::istream& in) {
  ThreeDMInstance inst;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    if (!header) {
      if (!(row >> inst.side) || !(row >> std::ws).eof())
        throw ParseError("line " + std::to_string(lineno) + ": expected side size");
      header = true;
      continue;
    }
    std::array<int, 3> t{};
    if (!(row >> t[0] >> t[1] >> t[2]) || !(row >> std::ws).eof())
      throw ParseError("line " + std::to_string(lineno) + ": expected 'a b c'");
    inst.triplets.push_back(t);
  }
  if (!header) throw ParseError("missing side-size header");
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return inst;
}

/// Arc file: an "n" header line (vertex count), then one "u v" line per arc
/// (1-based vertices).  Blank lines and '#' comments are skipped.
inline Digraph parse_digraph(std::istream& in) {
  Digraph g;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    if (!header) {
      if (!(row >> g.vertex_count) || !(row >> std::ws).eof())
        throw ParseError("line " + std::to_string(lineno) + ": expected vertex count");
      header = true;
      continue;
    }
    int u, v;
    if (!(row >> u >> v) || !(row >> std::ws).eof())
      throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    g.arcs.emplace_back(u - 1, v - 1);
  }
  if (!header) throw ParseError("missing vertex-count header");
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return g;
}

}  // namespace matroid

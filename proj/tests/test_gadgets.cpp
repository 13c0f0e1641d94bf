#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "matroid/cnf.hpp"
#include "matroid/core.hpp"
#include "matroid/encodings.hpp"
#include "matroid/es.hpp"
#include "matroid/grid.hpp"
#include "matroid/reductions.hpp"
#include "matroid/rng.hpp"
#include "matroid/solvers.hpp"

using namespace matroid;

TEST_CASE("simple-uniform enumeration matches a brute-force filter", "[gadgets]") {
  // Independent oracle: filter all {0,1,2}^4 matrices by the definition.
  std::vector<SUMatrix> filtered;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c)
        for (int d = 0; d <= 2; ++d) {
          SUMatrix l(2, 2, {a, b, c, d});
          if (l.is_simple_uniform()) filtered.push_back(l);
        }

  std::vector<SUMatrix> enumerated = all_su_matrices(2, 2);
  REQUIRE(enumerated.size() == filtered.size());
  CHECK(enumerated.size() == 13);
  for (std::size_t i = 0; i < enumerated.size(); ++i)
    CHECK(enumerated[i] == filtered[i]);  // same lexicographic order

  // Includes all-ones, excludes all-zeros.
  bool has_ones = false;
  for (const auto& l : enumerated) has_ones = has_ones || l == SUMatrix::filled(2, 2, 1);
  CHECK(has_ones);

  // No duplicates, every yield valid, count within the coarse bound.
  for (int side = 2; side <= 3; ++side) {
    std::set<std::vector<int>> seen;
    std::size_t count = 0;
    enumerate_su_matrices(side, 2, [&](const SUMatrix& l) {
      CHECK(l.is_simple_uniform());
      CHECK(seen.insert(l.entries()).second);
      ++count;
      return true;
    });
    double coarse = std::pow(double(side + 1), side * 2.0);
    CHECK(double(count) <= coarse);
  }

  CHECK_THROWS_AS(enumerate_su_matrices(7, 2, [](const SUMatrix&) { return true; }),
                  GuardError);
}

TEST_CASE("grid reduction carries the planted witness", "[gadgets]") {
  // Universe {1..4}, family {{2,4}}; with the coordinate-count matrix of the
  // projected member, the reduced instance has that member as common basis.
  Subset member = subset_of({1, 3});  // {2,4} 1-based
  EmptySetInstance es = EmptySetInstance::explicit_family(4, 2, {member});
  GridShape g(2, 2);
  SUMatrix l = su_matrix_for_set(g, member);
  LMIInstance reduced = reduce_es_to_lmi(es, l, 3);
  REQUIRE(reduced.matroids.size() == 3);
  SolveOutcome out = brute_force_lmi(reduced);
  CHECK(out.yes);
  CHECK(out.witness == member);

  // Empty family: every reduced instance is a no-instance.
  EmptySetInstance empty = EmptySetInstance::empty_family(4, 2);
  enumerate_su_matrices(2, 2, [&](const SUMatrix& each) {
    CHECK_FALSE(brute_force_lmi(reduce_es_to_lmi(empty, each, 3)).yes);
    return true;
  });

  CHECK_THROWS_AS(reduce_es_to_lmi(es, l, 4), std::invalid_argument);
  EmptySetInstance wrong_n = EmptySetInstance::empty_family(5, 2);
  CHECK_THROWS_AS(reduce_es_to_lmi(wrong_n, l, 3), std::invalid_argument);
}

TEST_CASE("family-matroid queries forward one family query when they reach it",
          "[gadgets]") {
  Subset member = subset_of({1, 3});
  EmptySetInstance es = EmptySetInstance::explicit_family(4, 2, {member});
  SUMatrix ones = SUMatrix::filled(2, 2, 1);
  LMIInstance reduced = reduce_es_to_lmi(es, ones, 3);
  const MatroidOracle& gm = reduced.matroids[0];

  std::uint64_t f_before = es.queries();
  gm.contains(subset_of({0}));  // below rank, no family query
  CHECK(es.queries() == f_before);
  gm.contains(subset_of({0, 1}));  // rank-sized but not perfect
  CHECK(es.queries() == f_before);
  gm.contains(subset_of({0, 3}));  // perfect: exactly one forwarded query
  CHECK(es.queries() == f_before + 1);
  gm.contains(subset_of({1, 2}));  // the other perfect pair
  CHECK(es.queries() == f_before + 2);
}

TEST_CASE("two-column reduction structure", "[gadgets]") {
  // X(S) has k red elements iff it is perfect for the reduction matrix.
  for (int n : {3, 4, 5, 6}) {
    for (int k = 0; k <= n; ++k) {
      EmptySetInstance es = EmptySetInstance::empty_family(n, k);
      EmiReduction red = reduce_es_to_emi(es);
      CHECK(red.instance.ground_size == 2 * n);
      CHECK(subset_size(red.instance.red) == n);

      // Rebuild the reduction matrix as the reducer defines it.
      std::vector<int> entries(static_cast<std::size_t>(n) * 2, 0);
      for (int i = 0; i < n; ++i) entries[i * 2] = 1;
      entries[1] = k;
      entries[3] = n - k;
      SUMatrix l(n, 2, entries);
      REQUIRE(l.is_simple_uniform());

      for_each_k_subset(n, k, [&](Subset s) {
        Subset x = red.x_of(s);
        CHECK(subset_size(x & red.instance.red) == k);
        // Map the local X(S) to grid points and check perfectness there.
        Subset grid_x = 0;
        GridShape g = l.shape();
        for (int e : subset_elements(x)) {
          int row = e / 2 + 1, col = e % 2 + 1;
          grid_x = subset_with(grid_x, g.flat_index({row, col}));
        }
        CHECK(is_l_perfect(grid_x, l));
        return true;
      });

      // X(S') with the wrong red count is never perfect.
      for (int wrong_k = 0; wrong_k <= n; ++wrong_k) {
        if (wrong_k == k) continue;
        Subset x = red.x_of(first_k_subset(wrong_k));
        Subset grid_x = 0;
        GridShape g = l.shape();
        for (int e : subset_elements(x))
          grid_x = subset_with(grid_x, g.flat_index({e / 2 + 1, e % 2 + 1}));
        CHECK_FALSE(is_l_perfect(grid_x, l));
      }
    }
  }

  EmptySetInstance tiny = EmptySetInstance::empty_family(2, 1);
  CHECK_THROWS_AS(reduce_es_to_emi(tiny), GuardError);
}

TEST_CASE("two-column reduction decides the family emptiness", "[gadgets]") {
  Rng rng(53);
  for (int n : {3, 4, 5, 6}) {
    for (int k = 0; k <= n; ++k) {
      std::vector<Subset> k_subsets;
      for_each_k_subset(n, k, [&](Subset s) {
        k_subsets.push_back(s);
        return true;
      });
      std::vector<std::vector<Subset>> families;
      families.push_back({});
      for (Subset s : k_subsets) families.push_back({s});
      for (int extra = 0; extra < 10; ++extra) {
        std::vector<Subset> members;
        for (Subset s : k_subsets)
          if (rng.coin()) members.push_back(s);
        families.push_back(members);
      }
      for (const auto& members : families) {
        EmptySetInstance es = EmptySetInstance::explicit_family(n, k, members);
        SolveOutcome out = brute_force_emi(reduce_es_to_emi(es).instance);
        CHECK(out.yes == !members.empty());
      }
    }
  }
}

TEST_CASE("satisfiability-backed families", "[gadgets]") {
  CNFInstance cnf;
  cnf.variable_count = 2;
  cnf.clauses = {{1, 2}};
  EmptySetInstance es = es_from_sat(cnf, 1);
  CHECK(es.family_contains(subset_of({0})));
  CHECK(es.family_contains(subset_of({1})));
  SolveOutcome out = solve_es_bruteforce(es);
  CHECK(out.yes);

  CNFInstance unsat;
  unsat.variable_count = 1;
  unsat.clauses = {{1}, {-1}};
  for (int k = 0; k <= 1; ++k)
    CHECK_FALSE(solve_es_bruteforce(es_from_sat(unsat, k)).yes);

  // No clauses: every assignment satisfies vacuously.
  CNFInstance free;
  free.variable_count = 3;
  CHECK(solve_es_bruteforce(es_from_sat(free, 0)).yes);
}

TEST_CASE("DIMACS parsing", "[gadgets]") {
  std::istringstream good(
      "c a comment\n"
      "p cnf 3 2\n"
      "1 -2 0\n"
      "2 3 0\n");
  CNFInstance cnf = parse_dimacs(good);
  CHECK(cnf.variable_count == 3);
  REQUIRE(cnf.clauses.size() == 2);
  CHECK(cnf.clauses[0] == std::vector<int>{1, -2});

  CHECK(satisfies(cnf, subset_of({0, 2})));       // x1, x3 true
  CHECK_FALSE(satisfies(cnf, subset_of({1})));    // clause 1 unsatisfied

  std::istringstream no_header("1 2 0\n");
  CHECK_THROWS_AS(parse_dimacs(no_header), ParseError);
  std::istringstream bad_lit("p cnf 2 1\n3 0\n");
  CHECK_THROWS_AS(parse_dimacs(bad_lit), ParseError);
  std::istringstream unterminated("p cnf 2 1\n1 2\n");
  CHECK_THROWS_AS(parse_dimacs(unterminated), ParseError);
  std::istringstream empty_clause("p cnf 2 1\n0\n");
  CHECK_THROWS_AS(parse_dimacs(empty_clause), ParseError);
}

TEST_CASE("triplet encoding", "[gadgets]") {
  ThreeDMInstance one;
  one.side = 1;
  one.triplets = {{1, 1, 1}};
  CHECK(brute_force_lmi(encode_3dm(one)).yes);

  ThreeDMInstance collide;
  collide.side = 2;
  collide.triplets = {{1, 1, 1}, {1, 2, 2}};
  CHECK_FALSE(brute_force_lmi(encode_3dm(collide)).yes);

  // A coordinate value that no triplet covers rules out a perfect matching.
  ThreeDMInstance sparse;
  sparse.side = 2;
  sparse.triplets = {{1, 1, 1}};
  CHECK_FALSE(brute_force_lmi(encode_3dm(sparse)).yes);

  ThreeDMInstance good;
  good.side = 2;
  good.triplets = {{1, 1, 2}, {2, 2, 1}};
  SolveOutcome out = brute_force_lmi(encode_3dm(good));
  CHECK(out.yes);
  CHECK(out.witness == full_set(2));
}

TEST_CASE("arc encoding", "[gadgets]") {
  Digraph path;
  path.vertex_count = 3;
  path.arcs = {{0, 1}, {1, 2}};
  CHECK(brute_force_lmi(encode_hampath(path)).yes);

  Digraph cycle;
  cycle.vertex_count = 3;
  cycle.arcs = {{0, 1}, {1, 2}, {2, 0}};
  CHECK(brute_force_lmi(encode_hampath(cycle)).yes);  // drop one arc

  Digraph two_cycle;
  two_cycle.vertex_count = 2;
  two_cycle.arcs = {{0, 1}, {1, 0}};
  SolveOutcome out = brute_force_lmi(encode_hampath(two_cycle));
  CHECK(out.yes);
  CHECK(subset_size(*out.witness) == 1);

  Digraph arcless;
  arcless.vertex_count = 3;
  CHECK_FALSE(brute_force_lmi(encode_hampath(arcless)).yes);

  // Two disjoint arcs on four vertices: no Hamiltonian path.
  Digraph split;
  split.vertex_count = 4;
  split.arcs = {{0, 1}, {2, 3}};
  CHECK_FALSE(brute_force_lmi(encode_hampath(split)).yes);
}

TEST_CASE("encoded instances are matroids", "[gadgets]") {
  ThreeDMInstance inst;
  inst.side = 2;
  inst.triplets = {{1, 1, 2}, {2, 2, 1}, {1, 2, 1}, {2, 1, 2}};
  for (const auto& m : encode_3dm(inst).matroids)
    CHECK(verify_matroid_axioms(m).ok());

  Digraph g;
  g.vertex_count = 4;
  g.arcs = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}};
  for (const auto& m : encode_hampath(g).matroids)
    CHECK(verify_matroid_axioms(m).ok());
}

TEST_CASE("instance file parsing", "[gadgets]") {
  std::istringstream tri(
      "# matching instance\n"
      "2\n"
      "1 1 2\n"
      "2 2 1\n");
  ThreeDMInstance t = parse_3dm(tri);
  CHECK(t.side == 2);
  CHECK(t.triplets.size() == 2);

  std::istringstream bad_tri("2\n1 1\n");
  CHECK_THROWS_AS(parse_3dm(bad_tri), ParseError);
  std::istringstream dup_tri("2\n1 1 1\n1 1 1\n");
  CHECK_THROWS_AS(parse_3dm(dup_tri), ParseError);

  std::istringstream arcs(
      "3\n"
      "1 2\n"
      "2 3\n");
  Digraph g = parse_digraph(arcs);
  CHECK(g.vertex_count == 3);
  CHECK(g.arcs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  std::istringstream self_loop("2\n1 1\n");
  CHECK_THROWS_AS(parse_digraph(self_loop), ParseError);

  std::istringstream family(
      "# members\n"
      "2 4\n"
      "1 3\n");
  std::vector<Subset> members = parse_es_family(family, 4, 2);
  REQUIRE(members.size() == 2);
  CHECK(members[0] == subset_of({1, 3}));
  CHECK(members[1] == subset_of({0, 2}));

  std::istringstream wrong_size("1 2 3\n");
  CHECK_THROWS_AS(parse_es_family(wrong_size, 4, 2), ParseError);
  std::istringstream out_of_range("5 1\n");
  CHECK_THROWS_AS(parse_es_family(out_of_range, 4, 2), ParseError);
}

TEST_CASE("grid reduction equivalence on the 3x3 grid", "[gadgets]") {
  // Seeded families over [9]: the family is non-empty iff some simple-uniform
  // matrix produces a reduced instance with a common basis.
  Rng rng(83);
  int cases = 0;
  for (int k = 2; k <= 8; ++k) {
    std::vector<Subset> k_subsets;
    for_each_k_subset(9, k, [&](Subset s) {
      k_subsets.push_back(s);
      return true;
    });
    for (int trial = 0; trial < 43 && cases < 300; ++trial, ++cases) {
      std::vector<Subset> members;
      if (trial == 0) {
        // empty family
      } else if (trial <= 5) {
        members.push_back(k_subsets[rng.below(k_subsets.size())]);
      } else {
        for (Subset s : k_subsets)
          if (rng.below(k_subsets.size()) < 2) members.push_back(s);
      }
      EmptySetInstance es = EmptySetInstance::explicit_family(9, k, members);
      bool got = !enumerate_su_matrices(3, 2, [&](const SUMatrix& l) {
        return !brute_force_lmi(reduce_es_to_lmi(es, l, 3)).yes;
      });
      REQUIRE(got == !members.empty());
    }
  }
  CHECK(cases == 300);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/graph.hpp"

#include <numeric>
#include <vector>

using namespace countlab;

namespace {

// Independent oracle: count spanning trees by enumerating all (n-1)-subsets
// of the expanded edge list (parallel copies distinct) and testing
// acyclic+connected with a scratch union-find.
long brute_spanning_trees(const LabeledGraph& g) {
  std::vector<std::pair<int, int>> ex;
  for (const auto& e : g.edges())
    for (int c = 0; c < e.mult; ++c)
      if (e.u != e.v) ex.push_back({e.u, e.v});
  const int n = g.vertex_count();
  const int m = static_cast<int>(ex.size());
  if (n == 1) return 1;
  if (m < n - 1 || m > 30) return -1;
  long count = 0;
  std::vector<int> idx(n - 1);
  std::iota(idx.begin(), idx.end(), 0);
  auto is_tree = [&](const std::vector<int>& pick) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int comps = n;
    for (int i : pick) {
      int a = find(ex[i].first), b = find(ex[i].second);
      if (a == b) return false;
      parent[a] = b;
      --comps;
    }
    return comps == 1;
  };
  // Lexicographic combinations of size n-1.
  while (true) {
    if (is_tree(idx)) ++count;
    int i = n - 2;
    while (i >= 0 && idx[i] == m - (n - 1) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  return count;
}

LabeledGraph counterexample_graph() {
  // Theta-like 8-vertex graph: hub edge e = (A,B), five parallel 2-paths
  // A-P_i-B, and a pendant f = (A,Q).
  LabeledGraph g(8);
  g.add_edge(0, 1);  // e: A-B
  for (int i = 2; i <= 6; ++i) {
    g.add_edge(0, i);
    g.add_edge(1, i);
  }
  g.add_edge(0, 7);  // f: A-Q
  return g;
}

}  // namespace

TEST_CASE("complete graphs") {
  CHECK(LabeledGraph::complete(1).edge_count() == 0);
  CHECK(LabeledGraph::complete(4).edge_count() == 6);
  CHECK(LabeledGraph::complete(8).edge_count() == 28);
  CHECK(LabeledGraph::complete(4).is_simple());
  CHECK_THROWS_AS(LabeledGraph::complete(0), std::invalid_argument);
}

TEST_CASE("contraction of complete graphs") {
  const int n = 7;
  auto kn = LabeledGraph::complete(n);
  // K_n / e: merged vertex with two parallel edges to each of the n-2 others.
  auto ge = kn.contract({{0, 1}});
  CHECK(ge.vertex_count() == n - 1);
  for (int v = 1; v <= n - 2; ++v) CHECK(ge.multiplicity(0, v) == 2);
  CHECK(ge.multiplicity(1, 2) == 1);

  // K_n / {e,f} with e,f adjacent: three parallel edges to each of n-3 others.
  auto gef = kn.contract({{0, 1}, {0, 2}});
  CHECK(gef.vertex_count() == n - 2);
  for (int v = 1; v <= n - 3; ++v) CHECK(gef.multiplicity(0, v) == 3);

  // Contracting all edges of a triangle collapses it to a single vertex.
  LabeledGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  auto pt = tri.contract({{0, 1}, {1, 2}, {0, 2}});
  CHECK(pt.vertex_count() == 1);
  CHECK(pt.edge_count() == 0);

  CHECK_THROWS_AS(tri.contract({{0, 0}}), std::invalid_argument);
}

TEST_CASE("contraction composes") {
  auto g = counterexample_graph();
  auto both = g.contract({{0, 1}, {1, 2}});
  auto one = g.contract({{0, 1}});
  // After contracting (0,1), vertex 1 merges into 0; edge (1,2) maps to (0,1)
  // in the compacted labeling (vertex 2 becomes 1).
  auto then = one.contract({{0, 1}});
  CHECK(both.to_json() == then.to_json());
}

TEST_CASE("matrix-tree counts vs brute force") {
  CHECK(matrix_tree_count(LabeledGraph::complete(4)) == Rational(16));
  LabeledGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  CHECK(matrix_tree_count(path) == Rational(1));

  // Cayley on K_n.
  for (int n = 2; n <= 7; ++n) {
    CHECK(matrix_tree_count(LabeledGraph::complete(n)) == Rational::int_pow(BigInt(n), n - 2));
  }

  // Assorted graphs incl. multigraphs, against the enumeration oracle.
  std::vector<LabeledGraph> roster;
  roster.push_back(LabeledGraph::complete(5));
  roster.push_back(counterexample_graph());
  {
    LabeledGraph m(4);  // triangle with doubled edge plus a pendant
    m.add_edge(0, 1, 2);
    m.add_edge(1, 2);
    m.add_edge(0, 2);
    m.add_edge(2, 3);
    roster.push_back(m);
  }
  {
    LabeledGraph c6(6);
    for (int i = 0; i < 6; ++i) c6.add_edge(i, (i + 1) % 6);
    roster.push_back(c6);
  }
  for (const auto& g : roster) {
    const long expect = brute_spanning_trees(g);
    REQUIRE(expect >= 0);
    CHECK(matrix_tree_count(g) == Rational(expect));
    // det M(i) independent of the deleted index.
    for (int i = 0; i < g.vertex_count(); ++i) CHECK(matrix_tree_count(g, i) == Rational(expect));
  }

  LabeledGraph disc(4);
  disc.add_edge(0, 1);
  disc.add_edge(2, 3);
  CHECK(matrix_tree_count(disc) == Rational(0));
}

TEST_CASE("structured determinants") {
  CHECK(principal_det_identities(5, 2).first == Rational(15));
  CHECK(principal_det_identities(6, 1).first == Rational(5));
  CHECK(principal_det_identities(7, 4).first == Rational(1029));
  for (int n = 3; n <= 10; ++n) {
    for (int m = 1; m <= n - 2; ++m) {
      auto [detA, detB] = principal_det_identities(n, m);
      CHECK(detA == Rational::int_pow(BigInt(n), m - 1) * Rational(n - m));
      CHECK(detB == Rational(0));
    }
  }
  CHECK_THROWS_AS(principal_det_identities(5, 4), std::invalid_argument);
}

TEST_CASE("matchings within a vertex set") {
  auto k4 = LabeledGraph::complete(4);
  CHECK(matchings_within(k4, {0, 1, 2, 3}, 0) == Rational(1));
  CHECK(matchings_within(k4, {0, 1, 2}, 1) == Rational(3));
  CHECK(matchings_within(k4, {0, 1, 2, 3}, 2) == Rational(3));
  CHECK(matchings_within(k4, {0, 1}, 2) == Rational(0));

  // Complete S of size k+r-1 inside a larger complete graph:
  // nu_r = (k+r-1)! / (2^r r! (k-r-1)!).
  auto k9 = LabeledGraph::complete(9);
  for (int k = 2; k <= 5; ++k) {
    for (int r = 0; r < k; ++r) {
      const int size = k + r - 1;
      std::vector<int> S(size);
      std::iota(S.begin(), S.end(), 0);
      const Rational expect = Rational(factorial(size)) /
                              (Rational(2).pow(r) * Rational(factorial(r)) * Rational(factorial(k - r - 1)));
      CHECK(matchings_within(k9, S, r) == expect);
    }
  }

  // Multiplicities scale matchings.
  LabeledGraph m(3);
  m.add_edge(0, 1, 3);
  m.add_edge(1, 2, 2);
  CHECK(matchings_within(m, {0, 1, 2}, 1) == Rational(5));
}

TEST_CASE("graph serialization round trip") {
  auto g = counterexample_graph();
  CHECK(LabeledGraph::from_json(g.to_json()).to_json() == g.to_json());
  auto h = LabeledGraph::from_edge_list("0 1\n1 2 3\n0 2\n");
  CHECK(h.vertex_count() == 3);
  CHECK(h.multiplicity(1, 2) == 3);
  CHECK(h.edge_count() == 5);
}

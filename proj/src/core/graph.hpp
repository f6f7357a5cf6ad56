#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "rational.hpp"

namespace countlab {

// One parallel-edge class: unordered pair u < v (or u == v for a recorded
// self-loop) with multiplicity >= 1.
struct Edge {
  int u;
  int v;
  int mult;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Labeled multigraph on vertices 0..n-1. Edges are kept sorted by (u,v); that
// lexicographic order is also the bit order used by the brute-force
// enumerator, so it is part of every serialized report.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("LabeledGraph: negative vertex count");
  }

  static LabeledGraph complete(int n);
  static LabeledGraph from_json(const std::string& text);
  static LabeledGraph from_edge_list(const std::string& text);  // lines "u v [mult]"

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Total edge count with multiplicity, self-loops included.
  long edge_count() const;
  bool is_simple() const;
  bool is_connected() const;

  void add_edge(int u, int v, int mult = 1);
  int multiplicity(int u, int v) const;

  // Merge the given vertices into one class (smallest label survives, then
  // labels are compacted to a dense range). Self-loops created by the merge
  // are dropped; parallel edges are kept.
  LabeledGraph identify_vertices(const std::vector<int>& verts) const;
  // Contract a set of edges: endpoints are merged per connected closure of
  // the chosen edges. Unknown edges are an error.
  LabeledGraph contract(const std::vector<std::pair<int, int>>& edge_set) const;

  // Kirchhoff matrix M = D - A (self-loops do not contribute).
  std::vector<std::vector<BigInt>> kirchhoff() const;

  std::string to_json() const;  // canonical: sorted edges, stable key order

 private:
  void normalize();
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Determinant of an integer matrix by fraction-free Bareiss elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

// Number of spanning trees via the matrix-tree theorem (0 if disconnected),
// deleting row/column `deleted` (any index gives the same value).
Rational matrix_tree_count(const LabeledGraph& g, int deleted = 0);

// Determinants of the two structured matrices that appear when the k-forest
// formula is applied to complete graphs: A_m is m x m with n-1 on the
// diagonal and -1 off it; B_m borders A_m with -(n-m) and corner m(n-m).
std::pair<Rational, Rational> principal_det_identities(int n, int m);

// Number of r-edge matchings with all endpoints inside S, counted with edge
// multiplicity; nu_0 = 1 by convention.
Rational matchings_within(const LabeledGraph& g, const std::vector<int>& S, int r);

}  // namespace countlab

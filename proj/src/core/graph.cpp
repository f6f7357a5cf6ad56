#include "graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace countlab {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // keep the smaller root
    return true;
  }
};

}  // namespace

LabeledGraph LabeledGraph::complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

void LabeledGraph::add_edge(int u, int v, int mult) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("add_edge: vertex out of range");
  if (mult < 1) throw std::invalid_argument("add_edge: multiplicity must be >= 1");
  if (u > v) std::swap(u, v);
  for (auto& e : edges_) {
    if (e.u == u && e.v == v) {
      e.mult += mult;
      return;
    }
  }
  edges_.push_back({u, v, mult});
  normalize();
}

void LabeledGraph::normalize() {
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

long LabeledGraph::edge_count() const {
  long total = 0;
  for (const auto& e : edges_) total += e.mult;
  return total;
}

bool LabeledGraph::is_simple() const {
  for (const auto& e : edges_)
    if (e.mult != 1 || e.u == e.v) return false;
  return true;
}

bool LabeledGraph::is_connected() const {
  if (n_ == 0) return false;
  UnionFind uf(n_);
  int comps = n_;
  for (const auto& e : edges_)
    if (e.u != e.v && uf.unite(e.u, e.v)) --comps;
  return comps == 1;
}

int LabeledGraph::multiplicity(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (const auto& e : edges_)
    if (e.u == u && e.v == v) return e.mult;
  return 0;
}

LabeledGraph LabeledGraph::identify_vertices(const std::vector<int>& verts) const {
  UnionFind uf(n_);
  for (int v : verts)
    if (v < 0 || v >= n_) throw std::invalid_argument("identify_vertices: vertex out of range");
  for (size_t i = 1; i < verts.size(); ++i) uf.unite(verts[0], verts[i]);

  // Compact roots to 0..n'-1 preserving label order.
  std::vector<int> label(n_, -1);
  int next = 0;
  for (int v = 0; v < n_; ++v)
    if (uf.find(v) == v) label[v] = next++;
  LabeledGraph out(next);
  for (const auto& e : edges_) {
    const int a = label[uf.find(e.u)];
    const int b = label[uf.find(e.v)];
    if (a == b) continue;  // merge-created (or original) self-loops dropped
    out.add_edge(a, b, e.mult);
  }
  return out;
}

LabeledGraph LabeledGraph::contract(const std::vector<std::pair<int, int>>& edge_set) const {
  UnionFind uf(n_);
  for (auto [u, v] : edge_set) {
    if (multiplicity(u, v) == 0) throw std::invalid_argument("contract: edge not in graph");
    uf.unite(u, v);
  }
  std::vector<int> label(n_, -1);
  int next = 0;
  for (int v = 0; v < n_; ++v)
    if (uf.find(v) == v) label[v] = next++;
  LabeledGraph out(next);
  for (const auto& e : edges_) {
    const int a = label[uf.find(e.u)];
    const int b = label[uf.find(e.v)];
    if (a == b) continue;
    out.add_edge(a, b, e.mult);
  }
  return out;
}

std::vector<std::vector<BigInt>> LabeledGraph::kirchhoff() const {
  std::vector<std::vector<BigInt>> m(n_, std::vector<BigInt>(n_, BigInt(0)));
  for (const auto& e : edges_) {
    if (e.u == e.v) continue;  // self-loops never reach M
    m[e.u][e.v] -= e.mult;
    m[e.v][e.u] -= e.mult;
    m[e.u][e.u] += e.mult;
    m[e.v][e.v] += e.mult;
  }
  return m;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const size_t n = m.size();
  if (n == 0) return BigInt(1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("bareiss: matrix not square");

  BigInt prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return BigInt(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        BigInt num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

Rational matrix_tree_count(const LabeledGraph& g, int deleted) {
  const int n = g.vertex_count();
  if (n == 0) return Rational(0);
  if (n == 1) return Rational(1);
  if (deleted < 0 || deleted >= n) throw std::invalid_argument("matrix_tree_count: bad index");
  if (!g.is_connected()) return Rational(0);
  auto m = g.kirchhoff();
  std::vector<std::vector<BigInt>> minor;
  minor.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i == deleted) continue;
    std::vector<BigInt> row;
    row.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != deleted) row.push_back(m[i][j]);
    minor.push_back(std::move(row));
  }
  return Rational(bareiss_determinant(std::move(minor)));
}

std::pair<Rational, Rational> principal_det_identities(int n, int m) {
  if (m < 1 || m > n - 2) throw std::invalid_argument("principal_det_identities: need 1 <= m <= n-2");
  std::vector<std::vector<BigInt>> A(m, std::vector<BigInt>(m, BigInt(-1)));
  for (int i = 0; i < m; ++i) A[i][i] = BigInt(n - 1);
  std::vector<std::vector<BigInt>> B(m + 1, std::vector<BigInt>(m + 1, BigInt(-1)));
  for (int i = 0; i < m; ++i) B[i][i] = BigInt(n - 1);
  for (int i = 0; i < m; ++i) {
    B[i][m] = BigInt(-(n - m));
    B[m][i] = BigInt(-(n - m));
  }
  B[m][m] = BigInt(static_cast<long>(m) * (n - m));
  return {Rational(bareiss_determinant(std::move(A))), Rational(bareiss_determinant(std::move(B)))};
}

namespace {

Rational matchings_rec(const LabeledGraph& g, std::vector<int>& avail, int r) {
  if (r == 0) return Rational(1);
  if (static_cast<int>(avail.size()) < 2 * r) return Rational(0);
  // Branch on the smallest available vertex: either unmatched or matched to a
  // later available vertex, weighted by edge multiplicity.
  const int head = avail.front();
  std::vector<int> rest(avail.begin() + 1, avail.end());
  Rational total = matchings_rec(g, rest, r);  // head unmatched
  for (size_t i = 0; i < rest.size(); ++i) {
    const int mult = g.multiplicity(head, rest[i]);
    if (mult == 0) continue;
    std::vector<int> next;
    next.reserve(rest.size() - 1);
    for (size_t j = 0; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    total += Rational(mult) * matchings_rec(g, next, r - 1);
  }
  return total;
}

}  // namespace

Rational matchings_within(const LabeledGraph& g, const std::vector<int>& S, int r) {
  if (r < 0) throw std::invalid_argument("matchings_within: r must be >= 0");
  std::vector<int> verts = S;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (int v : verts)
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("matchings_within: vertex out of range");
  return matchings_rec(g, verts, r);
}

LabeledGraph LabeledGraph::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  LabeledGraph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw std::invalid_argument("graph json: bad edge entry");
    const int mult = e.size() == 3 ? e[2].get<int>() : 1;
    g.add_edge(e[0].get<int>(), e[1].get<int>(), mult);
  }
  return g;
}

LabeledGraph LabeledGraph::from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::tuple<int, int, int>> entries;
  int max_v = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u, v, mult = 1;
    if (!(ls >> u >> v)) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      throw std::invalid_argument("edge list: bad line '" + line + "'");
    }
    ls >> mult;
    entries.emplace_back(u, v, mult);
    max_v = std::max({max_v, u, v});
  }
  LabeledGraph g(max_v + 1);
  for (auto [u, v, mult] : entries) g.add_edge(u, v, mult);
  return g;
}

std::string LabeledGraph::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  auto arr = nlohmann::json::array();
  for (const auto& e : edges_) arr.push_back({e.u, e.v, e.mult});
  j["edges"] = arr;
  return j.dump();
}

}  // namespace countlab

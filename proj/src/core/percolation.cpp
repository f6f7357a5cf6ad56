#include "percolation.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <numeric>
#include <thread>

#include "closed_counts.hpp"
#include "enumerate.hpp"

namespace countlab {

namespace {

struct ForcedEdges {
  std::vector<std::pair<int, int>> edges;
};

ForcedEdges forced_edges(Conditioning c) {
  switch (c) {
    case Conditioning::NONE: return {{}};
    case Conditioning::EDGE_OPEN: return {{{0, 1}}};
    case Conditioning::ADJ_PAIR_OPEN: return {{{0, 1}, {0, 2}}};
    case Conditioning::DISJ_PAIR_OPEN: return {{{0, 1}, {2, 3}}};
  }
  throw std::invalid_argument("forced_edges: bad conditioning");
}

int min_vertices(Conditioning c) {
  switch (c) {
    case Conditioning::NONE: return 2;
    case Conditioning::EDGE_OPEN: return 2;
    case Conditioning::ADJ_PAIR_OPEN: return 3;
    case Conditioning::DISJ_PAIR_OPEN: return 4;
  }
  return 2;
}

// Bitmask of the forced edges in the K_n lexicographic edge order.
uint32_t forced_mask(int n, Conditioning c) {
  const auto edges = expanded_edges(LabeledGraph::complete(n));
  uint32_t mask = 0;
  for (auto [u, v] : forced_edges(c).edges) {
    bool found = false;
    for (size_t i = 0; i < edges.size(); ++i) {
      if (edges[i] == std::pair<int, int>(u, v)) {
        mask |= (1u << i);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("forced_mask: conditioned edge missing");
  }
  return mask;
}

}  // namespace

std::string conditioning_name(Conditioning c) {
  switch (c) {
    case Conditioning::NONE: return "none";
    case Conditioning::EDGE_OPEN: return "edge";
    case Conditioning::ADJ_PAIR_OPEN: return "adj-pair";
    case Conditioning::DISJ_PAIR_OPEN: return "disj-pair";
  }
  return "?";
}

Conditioning conditioning_from_name(const std::string& name) {
  if (name == "none") return Conditioning::NONE;
  if (name == "edge") return Conditioning::EDGE_OPEN;
  if (name == "adj-pair") return Conditioning::ADJ_PAIR_OPEN;
  if (name == "disj-pair") return Conditioning::DISJ_PAIR_OPEN;
  throw std::invalid_argument("unknown conditioning '" + name + "'");
}

int conditioned_vertex_count(Conditioning c) {
  switch (c) {
    case Conditioning::NONE: return 0;
    case Conditioning::EDGE_OPEN: return 2;
    case Conditioning::ADJ_PAIR_OPEN: return 3;
    case Conditioning::DISJ_PAIR_OPEN: return 4;
  }
  return 0;
}

Rational exact_disconnect_probability(int n, Conditioning c) {
  if (n < min_vertices(c)) throw std::invalid_argument("exact_disconnect_probability: n too small");
  if (c == Conditioning::NONE) {
    if (n > 60) throw std::invalid_argument("exact_disconnect_probability: n above recursion cap");
    const BigInt total = big_pow(BigInt(2), static_cast<unsigned long>(n) * (n - 1) / 2);
    return Rational(1) - Rational(connected_labeled_count(n), total);
  }
  const auto g = LabeledGraph::complete(n);
  const auto edges = expanded_edges(g);
  const uint32_t forced = forced_mask(n, c);
  const uint64_t total = 1ull << edges.size();
  uint64_t all = 0, disconnected = 0;
  for (uint64_t mask = 0; mask < total; ++mask) {
    if ((mask & forced) != forced) continue;
    ++all;
    if (classify(g, static_cast<EdgeConfig>(mask)).components != 1) ++disconnected;
  }
  return Rational(BigInt(static_cast<unsigned long>(disconnected)), BigInt(static_cast<unsigned long>(all)));
}

Rational isolated_ie_exact(int n, Conditioning c) {
  if (n < 2) throw std::invalid_argument("isolated_ie_exact: n must be >= 2");
  const int eligible = n - conditioned_vertex_count(c);
  Rational acc(0);
  for (int m = 1; m <= eligible; ++m) {
    const unsigned long exponent =
        static_cast<unsigned long>(m) * (m - 1) / 2 + static_cast<unsigned long>(m) * (n - m);
    Rational term = Rational(binomial(eligible, m)) / Rational(big_pow(BigInt(2), exponent));
    acc += (m % 2) ? term : -term;
  }
  return acc;
}

BonferroniReport bonferroniBracketImpl(int n, Conditioning c) {
  const int eligible = n - conditioned_vertex_count(c);
  if (eligible < 1) throw std::invalid_argument("bonferroni_bracket: no unconditioned vertices");

  // S_j: all C(eligible, j) vertex subsets isolate with the same probability,
  // independent of the conditioning (forced edges never touch them).
  std::vector<Rational> s(static_cast<size_t>(eligible) + 1, Rational(0));
  for (int j = 1; j <= eligible; ++j) {
    const unsigned long exponent =
        static_cast<unsigned long>(j) * (j - 1) / 2 + static_cast<unsigned long>(j) * (n - j);
    s[static_cast<size_t>(j)] = Rational(binomial(eligible, j)) / Rational(big_pow(BigInt(2), exponent));
  }

  // Exact union probability by enumeration under the conditioning.
  const auto g = LabeledGraph::complete(n);
  const auto edges = expanded_edges(g);
  const uint32_t forced = forced_mask(n, c);
  const uint64_t total = 1ull << edges.size();
  uint64_t all = 0, with_isolated = 0;
  for (uint64_t mask = 0; mask < total; ++mask) {
    if ((mask & forced) != forced) continue;
    ++all;
    int deg[32] = {};
    for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
      const auto [u, v] = edges[static_cast<size_t>(std::countr_zero(rem))];
      ++deg[u];
      ++deg[v];
    }
    for (int vtx = 0; vtx < n; ++vtx) {
      if (deg[vtx] == 0) {
        ++with_isolated;
        break;
      }
    }
  }
  BonferroniReport rep;
  rep.exact_union = Rational(BigInt(static_cast<unsigned long>(with_isolated)), BigInt(static_cast<unsigned long>(all)));

  Rational partial(0);
  for (int k = 1; k <= eligible; ++k) {
    partial += (k % 2) ? s[static_cast<size_t>(k)] : -s[static_cast<size_t>(k)];
    rep.partial_sums.push_back(partial);
    const bool ok = (k % 2) ? (rep.exact_union <= partial) : (rep.exact_union >= partial);
    if (!ok) rep.brackets_hold = false;
    // Tail bound |sum_{j=k}^{M} (-1)^{j-1} S_j| <= S_k.
    Rational tail(0);
    for (int j = k; j <= eligible; ++j) {
      const Rational t = s[static_cast<size_t>(j)];
      tail += (j % 2) ? t : -t;
    }
    if (tail.abs() > s[static_cast<size_t>(k)]) rep.tails_bounded = false;
  }
  rep.full_sum_exact = partial == rep.exact_union;
  return rep;
}

BonferroniReport bonferroni_bracket(int n, Conditioning c) { return bonferroniBracketImpl(n, c); }

McEstimate mc_disconnect(int n, Conditioning c, long trials, uint64_t seed, int workers) {
  if (n < min_vertices(c) || n > 64) throw std::invalid_argument("mc_disconnect: n out of range");
  if (trials < 1) throw std::invalid_argument("mc_disconnect: trials must be >= 1");
  if (workers < 1 || workers > 64) throw std::invalid_argument("mc_disconnect: bad worker count");

  const int m = n * (n - 1) / 2;
  const int words = (m + 63) / 64;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  std::vector<int> forced_bits;
  for (auto [u, v] : forced_edges(c).edges) {
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == std::pair<int, int>(u, v)) forced_bits.push_back(static_cast<int>(i));
  }

  auto run = [&](uint64_t stream_seed, long count) -> long {
    long hits = 0;
    uint64_t counter = 0;
    std::vector<uint64_t> bits(static_cast<size_t>(words));
    std::vector<int> parent(static_cast<size_t>(n));
    for (long t = 0; t < count; ++t) {
      for (int w = 0; w < words; ++w) bits[static_cast<size_t>(w)] = splitmix64(stream_seed, counter++);
      for (int b : forced_bits) bits[static_cast<size_t>(b) / 64] |= (1ull << (b % 64));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
      };
      int comps = n;
      for (int i = 0; i < m; ++i) {
        if (!((bits[static_cast<size_t>(i) / 64] >> (i % 64)) & 1)) continue;
        const int a = find(edges[static_cast<size_t>(i)].first);
        const int b = find(edges[static_cast<size_t>(i)].second);
        if (a != b) {
          parent[static_cast<size_t>(b)] = a;
          --comps;
        }
      }
      if (comps != 1) ++hits;
    }
    return hits;
  };

  long successes = 0;
  if (workers == 1) {
    successes = run(seed, trials);
  } else {
    std::vector<long> partial(static_cast<size_t>(workers), 0);
    std::vector<std::thread> pool;
    const long chunk = trials / workers;
    for (int w = 0; w < workers; ++w) {
      const long count = (w == workers - 1) ? trials - chunk * (workers - 1) : chunk;
      pool.emplace_back([&, w, count]() { partial[static_cast<size_t>(w)] = run(seed ^ static_cast<uint64_t>(w), count); });
    }
    for (auto& th : pool) th.join();
    for (long p : partial) successes += p;
  }

  McEstimate est;
  est.trials = trials;
  est.successes = successes;
  est.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  est.stderr_value = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  est.seed = seed;
  est.workers = workers;
  return est;
}

UcPncCountingReport uc_pnc_counting_check(int n) {
  if (n < 4) throw std::invalid_argument("uc_pnc_counting_check: need n >= 4");
  const auto classes = enumerate_classes(LabeledGraph::complete(n));
  UcPncCountingReport rep;
  BigInt connected(0), with_e(0), with_adj(0), with_disj(0);
  for (const auto& [key, s] : classes) {
    if (key.components != 1) continue;
    connected += BigInt(static_cast<unsigned long>(s.count));
    with_e += BigInt(static_cast<unsigned long>(s.with_edge));
    with_adj += BigInt(static_cast<unsigned long>(s.with_adj_pair));
    with_disj += BigInt(static_cast<unsigned long>(s.with_disj_pair));
  }
  rep.connected = connected;
  rep.with_edge = with_e;
  rep.with_adj_pair = with_adj;
  rep.with_disj_pair = with_disj;
  rep.adjacent_holds = with_adj * connected <= with_e * with_e;
  rep.disjoint_holds = with_disj * connected <= with_e * with_e;

  // Equivalent Bernoulli(1/2) form: all four probabilities are the counts
  // over 2^{|E|}, so the two inequalities must coincide.
  const BigInt denom = big_pow(BigInt(2), static_cast<unsigned long>(n) * (n - 1) / 2);
  const Rational p_c(connected, denom);
  const Rational p_e(with_e, denom);
  const Rational p_adj(with_adj, denom);
  const Rational p_disj(with_disj, denom);
  const bool prob_adj = p_adj * p_c <= p_e * p_e;
  const bool prob_disj = p_disj * p_c <= p_e * p_e;
  rep.probability_form_agrees = (prob_adj == rep.adjacent_holds) && (prob_disj == rep.disjoint_holds);
  return rep;
}

std::vector<ResidualRow> second_order_residuals(const std::vector<int>& ns) {
  std::vector<ResidualRow> rows;
  for (int n : ns) {
    const Rational p = exact_disconnect_probability(n, Conditioning::NONE);
    const Rational xn = Rational(1, 2).pow(n - 1);
    ResidualRow row;
    row.n = n;
    row.disconnect = p;
    row.residual = (p - Rational(n) * xn) / (xn * xn);
    row.residual_value = row.residual.to_double();
    rows.push_back(row);
  }
  return rows;
}

IsolatedDecompositionRow isolated_decomposition_row(int n) {
  IsolatedDecompositionRow row;
  row.n = n;
  const Rational xn = Rational(1, 2).pow(n - 1);
  row.e1_exact = isolated_ie_exact(n, Conditioning::NONE);
  row.e1_two_term = Rational(n) * xn - Rational(n) * Rational(n - 1) * xn * xn;
  // Exact probability that the smallest component has exactly 2 vertices.
  const auto g = LabeledGraph::complete(n);
  const auto edges = expanded_edges(g);
  const uint64_t total = 1ull << edges.size();
  uint64_t count = 0;
  for (uint64_t mask = 0; mask < total; ++mask) {
    int deg[32] = {};
    for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
      const auto [u, v] = edges[static_cast<size_t>(std::countr_zero(rem))];
      ++deg[u];
      ++deg[v];
    }
    bool isolated = false;
    for (int vtx = 0; vtx < n; ++vtx) isolated |= (deg[vtx] == 0);
    if (isolated) continue;
    // smallest component size 2 <=> some component of size exactly 2
    const auto c = classify(g, static_cast<EdgeConfig>(mask));
    if (c.components < 2) continue;
    // count component sizes
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      return x;
    };
    for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
      const auto [u, v] = edges[static_cast<size_t>(std::countr_zero(rem))];
      const int a = find(u), b = find(v);
      if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<int> size(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) ++size[static_cast<size_t>(find(v))];
    int smallest = n;
    for (int v = 0; v < n; ++v)
      if (size[static_cast<size_t>(v)] > 0) smallest = std::min(smallest, size[static_cast<size_t>(v)]);
    if (smallest == 2) ++count;
  }
  row.e2_exact = Rational(BigInt(static_cast<unsigned long>(count)), big_pow(BigInt(2), edges.size()));
  row.e2_main = Rational(n) * Rational(n - 1) * xn * xn;
  return row;
}

}  // namespace countlab

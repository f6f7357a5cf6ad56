#include "enumerate.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include <json.hpp>

namespace countlab {

namespace {

struct MiniUF {
  int parent[32];
  void reset(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns false when the edge closes a cycle.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

int count_components(const std::vector<std::pair<int, int>>& edges, int n, EdgeConfig mask) {
  MiniUF uf;
  uf.reset(n);
  int comps = n;
  for (uint32_t rem = mask; rem; rem &= rem - 1) {
    const int i = std::countr_zero(rem);
    const auto [u, v] = edges[static_cast<size_t>(i)];
    if (u != v && uf.unite(u, v)) --comps;
  }
  return comps;
}

// Designated representatives used by the per-class counters.
struct Designated {
  int edge = -1;
  int adj_a = -1, adj_b = -1;
  int disj_a = -1, disj_b = -1;
};

Designated pick_designated(const std::vector<std::pair<int, int>>& edges) {
  Designated d;
  const int m = static_cast<int>(edges.size());
  if (m > 0) d.edge = 0;
  for (int i = 0; i < m && (d.adj_a < 0 || d.disj_a < 0); ++i) {
    for (int j = i + 1; j < m; ++j) {
      const bool share = edges[i].first == edges[j].first || edges[i].first == edges[j].second ||
                         edges[i].second == edges[j].first || edges[i].second == edges[j].second;
      if (share && d.adj_a < 0) {
        d.adj_a = i;
        d.adj_b = j;
      }
      if (!share && d.disj_a < 0) {
        d.disj_a = i;
        d.disj_b = j;
      }
      if (d.adj_a >= 0 && d.disj_a >= 0) break;
    }
  }
  return d;
}

int resolve_threads(int threads) {
  if (threads < 1) throw std::invalid_argument("enumerate: thread count must be >= 1");
  return std::min(threads, 16);
}

}  // namespace

std::vector<std::pair<int, int>> expanded_edges(const LabeledGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges())
    for (int c = 0; c < e.mult; ++c) out.push_back({e.u, e.v});
  if (out.size() > kEnumerationBitCap)
    throw std::invalid_argument("enumeration cap exceeded: " + std::to_string(out.size()) + " edges > " +
                                std::to_string(kEnumerationBitCap));
  if (g.vertex_count() > 32) throw std::invalid_argument("enumeration: too many vertices");
  return out;
}

ConfigClass classify(const LabeledGraph& g, EdgeConfig config) {
  const auto edges = expanded_edges(g);
  const int n = g.vertex_count();
  MiniUF uf;
  uf.reset(n);
  int comps = n;
  int m = 0;
  bool forest = true;
  for (uint32_t rem = config; rem; rem &= rem - 1) {
    const int i = std::countr_zero(rem);
    if (i >= static_cast<int>(edges.size())) throw std::invalid_argument("classify: config has bits beyond edge list");
    const auto [u, v] = edges[static_cast<size_t>(i)];
    ++m;
    if (u == v) {
      forest = false;
      continue;
    }
    if (uf.unite(u, v)) {
      --comps;
    } else {
      forest = false;
    }
  }
  return {m, comps, m - n, forest};
}

bool FamilySpec::contains(int n, const ConfigClass& c) const {
  switch (family) {
    case Family::ALL:
      return true;
    case Family::FORESTS:
      return c.forest;
    case Family::K_FORESTS:
      return c.forest && c.components == k;
    case Family::CONNECTED:
      return c.components == 1;
    case Family::K_EXCESS_CONNECTED:
      return c.components == 1 && c.edges == n + k;
    case Family::SPANNING_TREES:
      return c.forest && c.components == 1;
  }
  return false;
}

std::string FamilySpec::name() const {
  switch (family) {
    case Family::ALL: return "all";
    case Family::FORESTS: return "forests";
    case Family::K_FORESTS: return "k-forests(" + std::to_string(k) + ")";
    case Family::CONNECTED: return "connected";
    case Family::K_EXCESS_CONNECTED: return "k-excess-connected(" + std::to_string(k) + ")";
    case Family::SPANNING_TREES: return "spanning-trees";
  }
  return "?";
}

std::map<ClassKey, ClassStats> enumerate_classes(const LabeledGraph& g, int threads) {
  const auto edges = expanded_edges(g);
  const int n = g.vertex_count();
  const int m = static_cast<int>(edges.size());
  const uint64_t total = 1ull << m;
  const Designated des = pick_designated(edges);
  threads = resolve_threads(threads);

  auto scan = [&](uint64_t lo, uint64_t hi, std::map<ClassKey, ClassStats>& out) {
    MiniUF uf;
    int deg[32];
    for (uint64_t mask = lo; mask < hi; ++mask) {
      uf.reset(n);
      std::fill(deg, deg + n, 0);
      int comps = n;
      int open = 0;
      bool forest = true;
      for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
        const int i = std::countr_zero(rem);
        const auto [u, v] = edges[static_cast<size_t>(i)];
        ++open;
        if (u == v) {
          forest = false;
          continue;
        }
        ++deg[u];
        ++deg[v];
        if (uf.unite(u, v)) --comps; else forest = false;
      }
      uint64_t d2 = 0;
      for (int x = 0; x < n; ++x) d2 += static_cast<uint64_t>(deg[x]) * deg[x];
      ClassStats& s = out[{open, comps, forest}];
      ++s.count;
      s.sum_deg2 += d2;
      if (des.edge >= 0 && (mask >> des.edge) & 1) ++s.with_edge;
      if (des.adj_a >= 0 && ((mask >> des.adj_a) & 1) && ((mask >> des.adj_b) & 1)) ++s.with_adj_pair;
      if (des.disj_a >= 0 && ((mask >> des.disj_a) & 1) && ((mask >> des.disj_b) & 1)) ++s.with_disj_pair;
    }
  };

  if (threads == 1 || total < (1u << 12)) {
    std::map<ClassKey, ClassStats> out;
    scan(0, total, out);
    return out;
  }
  std::vector<std::map<ClassKey, ClassStats>> parts(static_cast<size_t>(threads));
  std::vector<std::thread> workers;
  const uint64_t chunk = total / threads;
  for (int t = 0; t < threads; ++t) {
    const uint64_t lo = chunk * static_cast<uint64_t>(t);
    const uint64_t hi = (t == threads - 1) ? total : lo + chunk;
    workers.emplace_back(scan, lo, hi, std::ref(parts[static_cast<size_t>(t)]));
  }
  for (auto& w : workers) w.join();
  std::map<ClassKey, ClassStats> out;
  for (const auto& part : parts) {
    for (const auto& [key, s] : part) {
      ClassStats& acc = out[key];
      acc.count += s.count;
      acc.with_edge += s.with_edge;
      acc.with_adj_pair += s.with_adj_pair;
      acc.with_disj_pair += s.with_disj_pair;
      acc.sum_deg2 += s.sum_deg2;
    }
  }
  return out;
}

uint64_t SubgraphTally::pair_count(int i, int j) const {
  if (!pairs_collected) throw std::logic_error("SubgraphTally: pair statistics were not collected");
  if (i == j) throw std::invalid_argument("SubgraphTally::pair_count: need distinct edges");
  if (i > j) std::swap(i, j);
  const int m = static_cast<int>(edge_order.size());
  const size_t idx = static_cast<size_t>(i) * m - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
  return pair_open[idx];
}

SubgraphTally tally_family(const LabeledGraph& g, const FamilySpec& family, bool collect_pairs, int threads) {
  SubgraphTally tally;
  tally.host = g;
  tally.family = family;
  tally.edge_order = expanded_edges(g);
  tally.pairs_collected = collect_pairs;
  const int n = g.vertex_count();
  const int m = static_cast<int>(tally.edge_order.size());
  const uint64_t total = 1ull << m;
  const size_t pair_slots = static_cast<size_t>(m) * (m - 1) / 2;
  threads = resolve_threads(threads);

  struct Acc {
    uint64_t size = 0;
    uint64_t deg2 = 0;
    std::map<ClassKey, uint64_t> classes;
    std::vector<uint64_t> edges;
    std::vector<uint64_t> pairs;
  };
  const auto& edges = tally.edge_order;

  auto scan = [&](uint64_t lo, uint64_t hi, Acc& acc) {
    acc.edges.assign(static_cast<size_t>(m), 0);
    if (collect_pairs) acc.pairs.assign(pair_slots, 0);
    MiniUF uf;
    int deg[32];
    int open_idx[32];
    for (uint64_t mask = lo; mask < hi; ++mask) {
      uf.reset(n);
      std::fill(deg, deg + n, 0);
      int comps = n;
      int open = 0;
      bool forest = true;
      for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
        const int i = std::countr_zero(rem);
        const auto [u, v] = edges[static_cast<size_t>(i)];
        open_idx[open++] = i;
        if (u == v) {
          forest = false;
          continue;
        }
        ++deg[u];
        ++deg[v];
        if (uf.unite(u, v)) --comps; else forest = false;
      }
      const ConfigClass c{open, comps, open - n, forest};
      if (!family.contains(n, c)) continue;
      ++acc.size;
      ++acc.classes[{c.edges, c.components, c.forest}];
      uint64_t d2 = 0;
      for (int x = 0; x < n; ++x) d2 += static_cast<uint64_t>(deg[x]) * deg[x];
      acc.deg2 += d2;
      for (int a = 0; a < open; ++a) {
        ++acc.edges[static_cast<size_t>(open_idx[a])];
        if (!collect_pairs) continue;
        const int i = open_idx[a];
        for (int b = a + 1; b < open; ++b) {
          const int j = open_idx[b];
          acc.pairs[static_cast<size_t>(i) * m - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1)] += 1;
        }
      }
    }
  };

  std::vector<Acc> parts(static_cast<size_t>(threads));
  if (threads == 1 || total < (1u << 12)) {
    parts.resize(1);
    scan(0, total, parts[0]);
  } else {
    std::vector<std::thread> workers;
    const uint64_t chunk = total / threads;
    for (int t = 0; t < threads; ++t) {
      const uint64_t lo = chunk * static_cast<uint64_t>(t);
      const uint64_t hi = (t == threads - 1) ? total : lo + chunk;
      workers.emplace_back(scan, lo, hi, std::ref(parts[static_cast<size_t>(t)]));
    }
    for (auto& w : workers) w.join();
  }

  tally.edge_open.assign(static_cast<size_t>(m), 0);
  if (collect_pairs) tally.pair_open.assign(pair_slots, 0);
  for (const auto& acc : parts) {
    tally.family_size += acc.size;
    tally.sum_deg2 += acc.deg2;
    for (const auto& [key, cnt] : acc.classes) tally.class_counts[key] += cnt;
    for (size_t i = 0; i < acc.edges.size(); ++i) tally.edge_open[i] += acc.edges[i];
    if (collect_pairs)
      for (size_t i = 0; i < acc.pairs.size(); ++i) tally.pair_open[i] += acc.pairs[i];
  }
  return tally;
}

// ---------------------------------------------------------------------------
// FiniteMeasure

FiniteMeasure::FiniteMeasure(int ground_size, std::vector<std::pair<EdgeConfig, Quad2>> atoms)
    : ground_size_(ground_size), atoms_(std::move(atoms)) {
  if (ground_size < 0 || ground_size > kEnumerationBitCap)
    throw std::invalid_argument("FiniteMeasure: bad ground size");
  std::sort(atoms_.begin(), atoms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0 && atoms_[i].first == atoms_[i - 1].first)
      throw std::invalid_argument("FiniteMeasure: duplicate configuration");
    if (ground_size < 32 && (atoms_[i].first >> ground_size) != 0)
      throw std::invalid_argument("FiniteMeasure: configuration outside ground set");
    if (atoms_[i].second.sign() < 0) throw std::invalid_argument("FiniteMeasure: negative weight");
  }
  atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(), [](const auto& a) { return a.second.is_zero(); }),
               atoms_.end());
}

FiniteMeasure FiniteMeasure::uniform_family(const LabeledGraph& g, const FamilySpec& family) {
  const auto edges = expanded_edges(g);
  if (edges.size() > 22) throw std::invalid_argument("uniform_family: host too large for explicit atoms");
  const int n = g.vertex_count();
  std::vector<std::pair<EdgeConfig, Quad2>> atoms;
  const uint64_t total = 1ull << edges.size();
  for (uint64_t mask = 0; mask < total; ++mask) {
    const auto c = classify(g, static_cast<EdgeConfig>(mask));
    if (family.contains(n, c)) atoms.push_back({static_cast<EdgeConfig>(mask), Quad2(1)});
  }
  if (atoms.empty()) throw std::invalid_argument("uniform_family: empty family");
  const Quad2 w = Quad2(Rational(1, static_cast<long>(atoms.size())));
  for (auto& a : atoms) a.second = w;
  return FiniteMeasure(static_cast<int>(edges.size()), std::move(atoms));
}

FiniteMeasure FiniteMeasure::point_mass(int ground_size, EdgeConfig config) {
  return FiniteMeasure(ground_size, {{config, Quad2(1)}});
}

FiniteMeasure FiniteMeasure::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int ground = j.at("ground").get<int>();
  std::vector<std::pair<EdgeConfig, Quad2>> atoms;
  for (const auto& a : j.at("atoms")) {
    const std::string bits = a.at("config").get<std::string>();
    if (static_cast<int>(bits.size()) != ground)
      throw std::invalid_argument("measure json: config length != ground size");
    EdgeConfig mask = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') mask |= (1u << i);
      else if (bits[i] != '0') throw std::invalid_argument("measure json: config must be a 0/1 string");
    }
    Quad2 w;
    const auto& wj = a.at("weight");
    if (wj.is_string()) {
      w = Quad2(Rational::parse(wj.get<std::string>()));
    } else {
      w = Quad2(Rational::parse(wj.at("a").get<std::string>()),
                wj.contains("b") ? Rational::parse(wj.at("b").get<std::string>()) : Rational(0));
    }
    atoms.push_back({mask, w});
  }
  return FiniteMeasure(ground, std::move(atoms));
}

std::string FiniteMeasure::to_json() const {
  nlohmann::json j;
  j["ground"] = ground_size_;
  auto arr = nlohmann::json::array();
  for (const auto& [mask, w] : atoms_) {
    std::string bits(static_cast<size_t>(ground_size_), '0');
    for (int i = 0; i < ground_size_; ++i)
      if ((mask >> i) & 1) bits[static_cast<size_t>(i)] = '1';
    nlohmann::json entry;
    entry["config"] = bits;
    if (w.is_rational()) {
      entry["weight"] = w.a.to_string();
    } else {
      entry["weight"] = {{"a", w.a.to_string()}, {"b", w.b.to_string()}};
    }
    arr.push_back(entry);
  }
  j["atoms"] = arr;
  return j.dump();
}

Quad2 FiniteMeasure::total() const {
  Quad2 t(0);
  for (const auto& [mask, w] : atoms_) t += w;
  return t;
}

FiniteMeasure FiniteMeasure::normalized() const {
  const Quad2 t = total();
  if (t.is_zero()) throw std::domain_error("FiniteMeasure: zero total mass");
  auto atoms = atoms_;
  for (auto& [mask, w] : atoms) w /= t;
  return FiniteMeasure(ground_size_, std::move(atoms));
}

Quad2 FiniteMeasure::prob_edge(int e) const {
  Quad2 p(0);
  for (const auto& [mask, w] : atoms_)
    if ((mask >> e) & 1) p += w;
  return p;
}

Quad2 FiniteMeasure::prob_pair(int e, int f) const {
  Quad2 p(0);
  for (const auto& [mask, w] : atoms_)
    if (((mask >> e) & 1) && ((mask >> f) & 1)) p += w;
  return p;
}

FiniteMeasure FiniteMeasure::truncate(int k) const {
  std::vector<std::pair<EdgeConfig, Quad2>> atoms;
  Quad2 level(0);
  for (const auto& [mask, w] : atoms_) {
    if (std::popcount(mask) == k) {
      atoms.push_back({mask, w});
      level += w;
    }
  }
  if (level.is_zero()) throw std::domain_error("truncate: level " + std::to_string(k) + " has zero mass");
  for (auto& [mask, w] : atoms) w /= level;
  return FiniteMeasure(ground_size_, std::move(atoms));
}

// ---------------------------------------------------------------------------
// p-NC reports

namespace {

void track_ratio(PncReport& rep, const Quad2& lhs, const Quad2& rhs) {
  // ratio = lhs/rhs; only meaningful when lhs > 0 (then rhs > 0 or the pair
  // already failed hard). Compare fractions by cross multiplication.
  if (lhs.sign() <= 0 || rhs.sign() <= 0) return;
  if (!rep.has_ratio || (lhs * rep.max_ratio_den - rep.max_ratio_num * rhs).sign() > 0) {
    rep.has_ratio = true;
    rep.max_ratio_num = lhs;
    rep.max_ratio_den = rhs;
  }
}

}  // namespace

bool PncReport::ratio_at_most(long bound) const {
  if (!has_ratio) return true;
  return (Quad2(Rational(bound)) * max_ratio_den - max_ratio_num).sign() >= 0;
}

PncReport pnc_report(const FiniteMeasure& m_in) {
  const FiniteMeasure m = m_in.is_normalized() ? m_in : m_in.normalized();
  PncReport rep;
  const int ground = m.ground_size();
  std::vector<Quad2> marg(static_cast<size_t>(ground), Quad2(0));
  for (int e = 0; e < ground; ++e) marg[static_cast<size_t>(e)] = m.prob_edge(e);
  for (int e = 0; e < ground; ++e) {
    for (int f = e + 1; f < ground; ++f) {
      const Quad2 lhs = m.prob_pair(e, f);
      const Quad2 rhs = marg[static_cast<size_t>(e)] * marg[static_cast<size_t>(f)];
      const int cmp = (rhs - lhs).sign();
      rep.rows.push_back({e, f, lhs, rhs, cmp >= 0, cmp == 0});
      if (cmp < 0) rep.all_hold = false;
      track_ratio(rep, lhs, rhs);
    }
  }
  return rep;
}

PncReport pnc_report_from_tally(const SubgraphTally& t) {
  if (!t.pairs_collected) throw std::logic_error("pnc_report_from_tally: pair statistics required");
  if (t.family_size == 0) throw std::domain_error("pnc_report_from_tally: empty family");
  PncReport rep;
  const int m = static_cast<int>(t.edge_order.size());
  const Rational size(BigInt(static_cast<unsigned long>(t.family_size)));
  for (int e = 0; e < m; ++e) {
    for (int f = e + 1; f < m; ++f) {
      const Quad2 lhs{Rational(BigInt(static_cast<unsigned long>(t.pair_count(e, f)))) / size};
      const Quad2 rhs{(Rational(BigInt(static_cast<unsigned long>(t.edge_open[static_cast<size_t>(e)]))) / size) *
                      (Rational(BigInt(static_cast<unsigned long>(t.edge_open[static_cast<size_t>(f)]))) / size)};
      const int cmp = (rhs - lhs).sign();
      rep.rows.push_back({e, f, lhs, rhs, cmp >= 0, cmp == 0});
      if (cmp < 0) rep.all_hold = false;
      track_ratio(rep, lhs, rhs);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lattice conditions

LatticeVerdict lattice_condition(const FiniteMeasure& m_in) {
  const FiniteMeasure m = m_in.is_normalized() ? m_in : m_in.normalized();
  if (m.ground_size() > 20) throw std::invalid_argument("lattice_condition: ground set too large");
  std::map<EdgeConfig, Quad2> mu;
  for (const auto& [mask, w] : m.atoms()) mu[mask] = w;
  auto weight = [&mu](EdgeConfig c) -> Quad2 {
    auto it = mu.find(c);
    return it == mu.end() ? Quad2(0) : it->second;
  };

  bool plc = true;
  // A PLC violation needs mu(x) mu(y) > 0, so x and y range over the support.
  for (const auto& [x, wx] : mu) {
    for (const auto& [y, wy] : mu) {
      const Quad2 lhs = weight(x | y) * weight(x & y);
      if ((lhs - wx * wy).sign() < 0) {
        plc = false;
        break;
      }
    }
    if (!plc) break;
  }

  bool nlc = true;
  // An NLC violation needs mu(join) mu(meet) > 0, so enumerate support pairs
  // (v, w) with w subset of v and every split of the free bits.
  for (const auto& [v, wv] : mu) {
    for (const auto& [w, ww] : mu) {
      if ((w & v) != w) continue;
      const Quad2 lhs = wv * ww;
      const EdgeConfig free = v & ~w;
      if (std::popcount(free) > 20) throw std::invalid_argument("lattice_condition: split too large");
      // Iterate subsets of the free bits.
      EdgeConfig sub = 0;
      while (true) {
        const Quad2 rhs = weight(w | sub) * weight(w | (free ^ sub));
        if ((rhs - lhs).sign() < 0) {
          nlc = false;
          break;
        }
        if (sub == free) break;
        sub = (sub - free) & free;
      }
      if (!nlc) break;
    }
    if (!nlc) break;
  }

  if (plc && nlc) return LatticeVerdict::BOTH;
  if (plc) return LatticeVerdict::PLC;
  if (nlc) return LatticeVerdict::NLC;
  return LatticeVerdict::NEITHER;
}

std::string lattice_verdict_name(LatticeVerdict v) {
  switch (v) {
    case LatticeVerdict::PLC: return "PLC";
    case LatticeVerdict::NLC: return "NLC";
    case LatticeVerdict::BOTH: return "BOTH";
    case LatticeVerdict::NEITHER: return "NEITHER";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Moment identities

MomentReport moment_identity_check(const LabeledGraph& g, const FamilySpec& family) {
  const int n = g.vertex_count();
  if (n < 4) throw std::invalid_argument("moment_identity_check: need n >= 4");
  const SubgraphTally t = tally_family(g, family, true);
  if (t.family_size == 0) throw std::domain_error("moment_identity_check: empty family");
  // All members must have the same number of open edges.
  long m_edges = -1;
  for (const auto& [key, cnt] : t.class_counts) {
    if (m_edges < 0) m_edges = key.edges;
    else if (key.edges != m_edges)
      throw std::invalid_argument("moment_identity_check: family is not edge-count homogeneous");
  }

  const Designated des = pick_designated(t.edge_order);
  if (des.adj_a < 0 || des.disj_a < 0)
    throw std::invalid_argument("moment_identity_check: host lacks adjacent or disjoint pair");
  const Rational size(BigInt(static_cast<unsigned long>(t.family_size)));
  MomentReport rep;
  rep.p0 = Rational(BigInt(static_cast<unsigned long>(t.edge_open[static_cast<size_t>(des.edge)]))) / size;
  rep.p1 = Rational(BigInt(static_cast<unsigned long>(t.pair_count(des.adj_a, des.adj_b)))) / size;
  rep.p2 = Rational(BigInt(static_cast<unsigned long>(t.pair_count(des.disj_a, des.disj_b)))) / size;
  const Rational e2 = Rational(BigInt(static_cast<unsigned long>(t.sum_deg2))) / size;

  const Rational mr(m_edges);
  const Rational nn(n);
  rep.p0_matches = rep.p0 == mr / Rational(binomial(static_cast<unsigned long>(n), 2));
  rep.p1_identity = rep.p1 * nn * Rational(n - 1) * Rational(n - 2) == e2 - Rational(2) * mr;
  rep.p2_identity = rep.p2 * nn * Rational(n - 1) * Rational(n - 2) * Rational(n - 3) ==
                    Rational(4) * (mr * (mr + Rational(1)) - e2);
  rep.p2_from_p1_identity =
      rep.p2 * nn * Rational(n - 1) * Rational(n - 2) * Rational(n - 3) ==
      Rational(4) * (mr * (mr - Rational(1)) - rep.p1 * nn * Rational(n - 1) * Rational(n - 2));
  rep.edge_transitive = std::all_of(t.edge_open.begin(), t.edge_open.end(),
                                    [&](uint64_t c) { return c == t.edge_open[0]; });
  return rep;
}

// ---------------------------------------------------------------------------
// Lambda decomposition

LambdaReport verify_lambda_decomposition(const WrightTable& table, int n, int k) {
  if (k < 1) throw std::invalid_argument("verify_lambda_decomposition: need k >= 1");
  if (n < 4) throw std::invalid_argument("verify_lambda_decomposition: need n >= 4");
  if (n + k > n * (n - 1) / 2) throw std::invalid_argument("verify_lambda_decomposition: infeasible k");
  if (k > table.k_max()) throw std::invalid_argument("verify_lambda_decomposition: table too small");
  const LabeledGraph g = LabeledGraph::complete(n);
  const auto edges = expanded_edges(g);
  const int m = static_cast<int>(edges.size());
  // e = (0,1), f = (0,2): the first two edges in lexicographic order.
  const int ei = 0, fi = 1;

  LambdaReport rep;
  uint64_t count_km2 = 0, count_km2_ef = 0;
  const uint64_t total = 1ull << m;
  for (uint64_t mask = 0; mask < total; ++mask) {
    const int open = std::popcount(mask);
    const bool has_ef = ((mask >> ei) & 1) && ((mask >> fi) & 1);
    if (open == n + k - 2) {
      if (count_components(edges, n, static_cast<EdgeConfig>(mask)) == 1) {
        ++count_km2;
        if (has_ef) ++count_km2_ef;
      }
      continue;
    }
    if (!has_ef) continue;
    if (open == n + k) {
      if (count_components(edges, n, static_cast<EdgeConfig>(mask)) != 1) continue;
      ++rep.pair_count;
      const EdgeConfig rest = static_cast<EdgeConfig>(mask) & ~((1u << ei) | (1u << fi));
      const int comps = count_components(edges, n, rest);
      if (comps == 1) ++rep.lambda1;
      else if (comps == 2) ++rep.lambda2;
      else if (comps == 3) ++rep.lambda3;
      else throw invariant_error("lambda decomposition: more than 3 components after deletion");
    } else if (open == n + k - 1) {
      if (count_components(edges, n, static_cast<EdgeConfig>(mask)) != 1) continue;
      // f not on any cycle <=> removing f disconnects the subgraph.
      const EdgeConfig no_f = static_cast<EdgeConfig>(mask) & ~(1u << fi);
      if (count_components(edges, n, no_f) == 2) ++rep.lambda2_hat;
    }
  }

  rep.sum_matches = rep.pair_count == rep.lambda1 + rep.lambda2 + rep.lambda3;

  const Rational prefactor = Rational(1) - Rational(4 * (n + k - 2)) / (Rational(n) * Rational(n - 1));
  const Rational lhs1(BigInt(static_cast<unsigned long>(rep.lambda1)));
  rep.lambda1_identity =
      lhs1 == prefactor * Rational(BigInt(static_cast<unsigned long>(count_km2))) +
                  Rational(BigInt(static_cast<unsigned long>(count_km2_ef)));

  ThetaLaurent mixed;
  for (int l = -1; l <= k - 1; ++l) mixed = mixed + table.zw_prime(l) * table.z2w_double_prime(k - 2 - l);
  const Rational series_l2 = Rational(3) * Rational(factorial(static_cast<unsigned long>(n - 3))) *
                             theta_laurent_coeff(mixed, n);
  rep.lambda2_identity = Rational(BigInt(static_cast<unsigned long>(rep.lambda2))) ==
                         series_l2 - Rational(2) * Rational(BigInt(static_cast<unsigned long>(rep.lambda2_hat)));

  ThetaLaurent triple;
  for (int k1 = -1; k1 <= k; ++k1)
    for (int k2 = -1; k2 <= k - 1 - k1; ++k2) {
      const int k3 = k - 2 - k1 - k2;
      triple = triple + table.zw_prime(k1) * table.zw_prime(k2) * table.zw_prime(k3);
    }
  const Rational series_l3 = Rational(factorial(static_cast<unsigned long>(n - 3))) * theta_laurent_coeff(triple, n);
  rep.lambda3_identity = Rational(BigInt(static_cast<unsigned long>(rep.lambda3))) == series_l3;
  return rep;
}

// ---------------------------------------------------------------------------
// Structured component counts

StructuredCountReport structured_component_count(const WrightTable& table, int n,
                                                 const std::vector<std::vector<int>>& groups,
                                                 const std::vector<int>& excesses) {
  const int q = static_cast<int>(groups.size());
  const int p = static_cast<int>(excesses.size());
  if (p < q || q < 1) throw std::invalid_argument("structured_component_count: need 1 <= #groups <= #excesses");
  std::vector<int> group_of(static_cast<size_t>(n), -1);
  int d = 0;
  for (int i = 0; i < q; ++i) {
    if (groups[static_cast<size_t>(i)].empty()) throw std::invalid_argument("structured_component_count: empty group");
    for (int v : groups[static_cast<size_t>(i)]) {
      if (v < 0 || v >= n || group_of[static_cast<size_t>(v)] != -1)
        throw std::invalid_argument("structured_component_count: groups must be disjoint vertex sets");
      group_of[static_cast<size_t>(v)] = i;
      ++d;
    }
  }
  for (int i = 0; i < p; ++i)
    if (excesses[static_cast<size_t>(i)] < -1) throw std::invalid_argument("structured_component_count: excess < -1");

  const LabeledGraph g = LabeledGraph::complete(n);
  const auto edges = expanded_edges(g);
  const int m = static_cast<int>(edges.size());
  std::vector<int> free_multiset(excesses.begin() + q, excesses.end());
  std::sort(free_multiset.begin(), free_multiset.end());

  uint64_t count = 0;
  const uint64_t total = 1ull << m;
  MiniUF uf;
  for (uint64_t mask = 0; mask < total; ++mask) {
    uf.reset(n);
    int comps = n;
    for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
      const int i = std::countr_zero(rem);
      const auto [u, v] = edges[static_cast<size_t>(i)];
      if (uf.unite(u, v)) --comps;
    }
    if (comps != p) continue;
    // Component roots, sizes, edge counts.
    int root_group[32];
    int comp_verts[32], comp_edges[32];
    std::fill(root_group, root_group + n, -2);
    std::fill(comp_verts, comp_verts + n, 0);
    std::fill(comp_edges, comp_edges + n, 0);
    for (int v = 0; v < n; ++v) ++comp_verts[uf.find(v)];
    for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
      const int i = std::countr_zero(rem);
      ++comp_edges[uf.find(edges[static_cast<size_t>(i)].first)];
    }
    bool ok = true;
    // Groups sit inside single, pairwise distinct components with the right excess.
    for (int i = 0; i < q && ok; ++i) {
      const int root = uf.find(groups[static_cast<size_t>(i)][0]);
      for (int v : groups[static_cast<size_t>(i)])
        if (uf.find(v) != root) ok = false;
      if (!ok) break;
      if (root_group[root] != -2) ok = false;  // two groups in one component
      root_group[root] = i;
      if (comp_edges[root] - comp_verts[root] != excesses[static_cast<size_t>(i)]) ok = false;
    }
    if (!ok) continue;
    std::vector<int> free_excesses;
    for (int v = 0; v < n; ++v) {
      if (uf.find(v) != v) continue;
      if (root_group[v] >= 0) continue;
      free_excesses.push_back(comp_edges[v] - comp_verts[v]);
    }
    std::sort(free_excesses.begin(), free_excesses.end());
    if (free_excesses == free_multiset) ++count;
  }

  // Series side: (n-d)!/(p-q)! [z^{n-d}] prod_{i>q} W_{k_i} prod_j W^(m_j)_{k_j}.
  const int target = n - d;
  const int order = n;
  ExactSeries prod = ExactSeries::constant(Rational(1), order + 4);
  for (int i = q; i < p; ++i)
    prod = prod * table.w(excesses[static_cast<size_t>(i)]).to_series(order + 4);
  for (int j = 0; j < q; ++j) {
    ExactSeries wj = table.w(excesses[static_cast<size_t>(j)]).to_series(order + 4);
    for (size_t c = 0; c < groups[static_cast<size_t>(j)].size(); ++c) wj = wj.derivative();
    prod = prod * wj;
  }
  StructuredCountReport rep;
  rep.brute = Rational(BigInt(static_cast<unsigned long>(count)));
  rep.series = Rational(factorial(static_cast<unsigned long>(target))) * prod.coeff(target) /
               Rational(factorial(static_cast<unsigned long>(p - q)));
  rep.matches = rep.brute == rep.series;
  return rep;
}

// ---------------------------------------------------------------------------
// Rank sequences

RankSequenceReport rank_sequence(const LabeledGraph& g, int threads) {
  const auto classes = enumerate_classes(g, threads);
  const int n = g.vertex_count();
  RankSequenceReport rep;
  rep.b.assign(static_cast<size_t>(n), BigInt(0));
  for (const auto& [key, s] : classes) {
    if (!key.forest) continue;
    rep.b[static_cast<size_t>(key.edges)] += BigInt(static_cast<unsigned long>(s.count));
  }
  const int m = static_cast<int>(rep.b.size()) - 1;

  auto no_internal_zeros = [&]() {
    int first = -1, last = -1;
    for (int i = 0; i <= m; ++i)
      if (rep.b[static_cast<size_t>(i)] > 0) {
        if (first < 0) first = i;
        last = i;
      }
    for (int i = first; i <= last; ++i)
      if (rep.b[static_cast<size_t>(i)] == 0) return false;
    return true;
  }();

  rep.unimodal = [&]() {
    int i = 0;
    while (i < m && rep.b[static_cast<size_t>(i)] <= rep.b[static_cast<size_t>(i) + 1]) ++i;
    while (i < m && rep.b[static_cast<size_t>(i)] >= rep.b[static_cast<size_t>(i) + 1]) ++i;
    return i == m;
  }();

  auto ladder = [&](const auto& factor) {
    if (!no_internal_zeros) return false;
    for (int k = 1; k < m; ++k) {
      const Rational lhs = Rational(rep.b[static_cast<size_t>(k)]) * Rational(rep.b[static_cast<size_t>(k)]);
      const Rational rhs = factor(k) * Rational(rep.b[static_cast<size_t>(k) - 1]) *
                           Rational(rep.b[static_cast<size_t>(k) + 1]);
      if (lhs < rhs) return false;
    }
    return true;
  };
  rep.log_concave = ladder([](int) { return Rational(1); });
  rep.strongly_log_concave = ladder([](int k) { return Rational(k + 1, k); });
  rep.ultra_log_concave = ladder([m](int k) { return Rational(k + 1, k) * Rational(m - k + 1, m - k); });
  return rep;
}

}  // namespace countlab

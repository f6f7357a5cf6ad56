#include "suites.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace countlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Fixtures

LabeledGraph two_forest_counterexample_graph() {
  LabeledGraph g(8);
  g.add_edge(0, 1);
  for (int i = 2; i <= 6; ++i) {
    g.add_edge(0, i);
    g.add_edge(1, i);
  }
  g.add_edge(0, 7);
  return g;
}

FiniteMeasure nc_vs_truncation_measure() {
  const Quad2 single(Rational(-1, 2), Rational(1, 2));  // (sqrt2 - 1)/2
  const Quad2 pair(Rational(3, 2), Rational(-1));       // (3 - 2 sqrt2)/2
  return FiniteMeasure(4, {{0b0001, single},
                           {0b0010, single},
                           {0b0011, pair},
                           {0b0100, single},
                           {0b1000, single},
                           {0b1100, pair}});
}

FiniteMeasure truncation_vs_nc_measure(const Rational& epsilon) {
  if (!(epsilon > Rational(0)) || !(epsilon < Rational(1, 8)))
    throw std::invalid_argument("truncation_vs_nc_measure: epsilon must lie in (0, 1/8)");
  const Quad2 base{Rational(1, 2) - Rational(3) * epsilon};
  std::vector<std::pair<EdgeConfig, Quad2>> atoms = {{0b000, base}, {0b100, base}};
  for (EdgeConfig c = 1; c <= 7; ++c) {
    if (c == 0b100) continue;
    atoms.push_back({c, Quad2(epsilon)});
  }
  return FiniteMeasure(3, std::move(atoms));
}

// ---------------------------------------------------------------------------
// Shared state

const WrightTable& shared_wright_table(int k_max) {
  static std::mutex mu;
  static std::map<int, WrightTable> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(k_max);
  if (it == tables.end()) it = tables.emplace(k_max, WrightTable(k_max)).first;
  return it->second;
}

namespace {

// Class-statistics cache: every suite needing exhaustive K_n data shares one
// pass per (n, worker count). The key includes the worker count so that
// thread-variation runs really recompute (their results must still agree).
const std::map<ClassKey, ClassStats>& classes_for(int n, int threads) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::map<ClassKey, ClassStats>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, threads});
  if (it == cache.end())
    it = cache.emplace(std::pair<int, int>{n, threads}, enumerate_classes(LabeledGraph::complete(n), threads)).first;
  return it->second;
}

struct Checker {
  json rows = json::array();
  bool pass = true;
  void record(const std::string& what, bool ok, const std::string& info = "") {
    json row;
    row["check"] = what;
    row["pass"] = ok;
    if (!info.empty()) row["info"] = info;
    rows.push_back(row);
    pass = pass && ok;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PncVerdict pnc_kuc_verdict_from_classes(const std::map<ClassKey, ClassStats>& classes, const WrightTable& table,
                                        int n, int k) {
  if (k <= 0) return pnc_kuc_verdict(table, n, k);
  const auto it = classes.find({n + k, 1, false});
  if (it == classes.end()) throw std::domain_error("pnc table: empty family");
  PncVerdict v;
  v.n = n;
  v.k = k;
  v.p1 = Rational(BigInt(static_cast<unsigned long>(it->second.with_adj_pair))) /
         Rational(BigInt(static_cast<unsigned long>(it->second.count)));
  const Rational n2 = Rational(n) * Rational(n);
  const Rational nm1sq = Rational(n - 1) * Rational(n - 1);
  v.bound_adjacent = Rational(4) * Rational(n + k) * Rational(n + k) / (n2 * nm1sq);
  v.bound_non_adjacent =
      Rational(n + k) *
      (Rational(2 * (k + 1)) * Rational(2 * n - 3) + Rational(3) * Rational(n - 1) * Rational(n - 2)) /
      (n2 * nm1sq * Rational(n - 2));
  v.holds_adjacent = v.p1 <= v.bound_adjacent;
  v.holds_non_adjacent = v.p1 >= v.bound_non_adjacent;
  return v;
}

}  // namespace

std::string pnc_verdict_to_json(const PncVerdict& v) {
  json j;
  j["n"] = v.n;
  j["k"] = v.k;
  j["p1"] = v.p1.to_string();
  j["boundAdj"] = v.bound_adjacent.to_string();
  j["boundNonAdj"] = v.bound_non_adjacent.to_string();
  j["holds"] = v.holds();
  return j.dump();
}

// ---------------------------------------------------------------------------
// Suites

SuiteResult suite_golden_wk(const SuiteConfig& cfg) {
  SuiteResult res{"golden-wk", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);
  const std::pair<int, std::string> files[] = {
      {-1, "wm1.json"}, {0, "w0.json"}, {1, "w1.json"}, {2, "w2.json"},
      {3, "w3.json"},   {4, "w4.json"}, {5, "w5.json"},
  };
  for (const auto& [k, name] : files) {
    const auto expected = ThetaLaurent::from_json(read_file(cfg.golden_dir + "/wk/" + name));
    ck.record("wk(" + std::to_string(k) + ") equals transcription", table.w(k) == expected);
  }
  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_oracle_counts(const SuiteConfig& cfg) {
  SuiteResult res{"oracle-counts", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);

  // Connected test graphs with <= 8 vertices, all k: formula vs brute.
  std::vector<std::pair<std::string, LabeledGraph>> roster;
  roster.push_back({"counterexample-host", two_forest_counterexample_graph()});
  {
    LabeledGraph wheel(7);
    for (int i = 1; i <= 6; ++i) {
      wheel.add_edge(0, i);
      wheel.add_edge(i, i == 6 ? 1 : i + 1);
    }
    roster.push_back({"wheel-6", wheel});
  }
  {
    LabeledGraph k33(6);
    for (int a = 0; a < 3; ++a)
      for (int b = 3; b < 6; ++b) k33.add_edge(a, b);
    roster.push_back({"k33", k33});
  }
  {
    LabeledGraph multi(4);
    multi.add_edge(0, 1, 2);
    multi.add_edge(1, 2);
    multi.add_edge(0, 2);
    multi.add_edge(2, 3, 2);
    roster.push_back({"multi-triangle", multi});
  }
  roster.push_back({"k5", LabeledGraph::complete(5)});
  for (const auto& [name, g] : roster) {
    bool all = true;
    for (int k = 1; k <= g.vertex_count(); ++k) {
      const uint64_t brute = tally_family(g, {Family::K_FORESTS, k}, false, cfg.threads).family_size;
      all = all && liu_chow_count(g, k) == Rational(BigInt(static_cast<unsigned long>(brute)));
    }
    ck.record("liu-chow equals brute on " + name, all);
  }

  for (int n = 4; n <= cfg.brute_max_n; ++n) {
    const auto& classes = classes_for(n, cfg.threads);
    bool counts = true, pairs = true, series = true;
    for (int k = 1; k <= n; ++k) {
      uint64_t cnt = 0, pair = 0;
      auto it = classes.find({n - k, k, true});
      if (it != classes.end()) {
        cnt = it->second.count;
        pair = it->second.with_adj_pair;
      }
      counts = counts && kforest_count_Kn(n, k) == Rational(BigInt(static_cast<unsigned long>(cnt)));
      pairs = pairs && kforest_pair_count_Kn(n, k) == Rational(BigInt(static_cast<unsigned long>(pair)));
    }
    for (int k = -1; k <= 3; ++k) {
      uint64_t cnt = 0;
      auto it = classes.find({n + k, 1, k == -1});
      if (it != classes.end()) cnt = it->second.count;
      series = series && exact_connected_count(table, n, k) == Rational(BigInt(static_cast<unsigned long>(cnt)));
    }
    ck.record("k-forest counts vs brute at n=" + std::to_string(n), counts);
    ck.record("k-forest pair counts vs brute at n=" + std::to_string(n), pairs);
    ck.record("excess counts via series vs brute at n=" + std::to_string(n), series);
  }

  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_pnc_verdicts(const SuiteConfig& cfg) {
  SuiteResult res{"pnc-verdicts", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);
  json verdicts = json::array();
  for (int n = 4; n <= cfg.brute_max_n; ++n) {
    bool kuf_all = true;
    for (int k = 2; k <= n; ++k) {
      const auto v = pnc_kuf_verdict(n, k);
      verdicts.push_back(json::parse(pnc_verdict_to_json(v)));
      kuf_all = kuf_all && v.holds();
    }
    ck.record("uniform k-forest verdicts hold at n=" + std::to_string(n), kuf_all);
  }
  for (int n = 4; n <= cfg.brute_max_n; ++n) {
    const auto rep = uc_pnc_counting_check(n);
    ck.record("connected-subgraph counting inequality at n=" + std::to_string(n),
              rep.adjacent_holds && rep.disjoint_holds && rep.probability_form_agrees);
  }
  for (int n = 4; n <= cfg.brute_max_n; ++n) {
    const auto& classes = classes_for(n, cfg.threads);
    bool kuc_all = true;
    for (int k = -1; n + k <= n * (n - 1) / 2; ++k) {
      const auto v = pnc_kuc_verdict_from_classes(classes, table, n, k);
      kuc_all = kuc_all && v.holds();
    }
    ck.record("excess-connected verdicts hold at n=" + std::to_string(n), kuc_all);
  }
  res.detail["checks"] = ck.rows;
  res.detail["kufVerdicts"] = verdicts;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_counterexamples(const SuiteConfig& cfg) {
  SuiteResult res{"counterexamples", true, json::object()};
  Checker ck;

  {
    const auto g = two_forest_counterexample_graph();
    auto tally = tally_family(g, {Family::K_FORESTS, 2}, true, cfg.threads);
    int ei = -1, fi = -1;
    for (size_t i = 0; i < tally.edge_order.size(); ++i) {
      if (tally.edge_order[i] == std::pair<int, int>(0, 1)) ei = static_cast<int>(i);
      if (tally.edge_order[i] == std::pair<int, int>(0, 7)) fi = static_cast<int>(i);
    }
    const bool exact_values = tally.family_size == 384 && tally.pair_count(ei, fi) == 80 &&
                              tally.edge_open[static_cast<size_t>(ei)] == 112 &&
                              tally.edge_open[static_cast<size_t>(fi)] == 272;
    ck.record("two-forest counterexample fractions 80/384 vs 112/384 * 272/384", exact_values);
    const Rational lhs(80, 384);
    const Rational rhs = Rational(112, 384) * Rational(272, 384);
    ck.record("designated pair violates the product bound", lhs > rhs);
  }

  {
    const auto mu = nc_vs_truncation_measure();
    const auto rep = pnc_report(mu);
    bool equalities = true;
    for (const auto& row : rep.rows) {
      if ((row.e == 0 && row.f == 1) || (row.e == 2 && row.f == 3)) equalities = equalities && row.equality;
    }
    ck.record("quad2 measure satisfies p-NC with the two equalities", rep.all_hold && equalities);
    const auto rep2 = pnc_report(mu.truncate(2));
    bool half_quarter = false;
    for (const auto& row : rep2.rows) {
      if (row.e == 0 && row.f == 1)
        half_quarter = row.lhs == Quad2(Rational(1, 2)) && row.rhs == Quad2(Rational(1, 4)) && !row.holds;
    }
    ck.record("its 2-truncation fails with 1/2 > 1/4", !rep2.all_hold && half_quarter);
  }

  {
    const auto mu = truncation_vs_nc_measure(Rational(1, 16));
    ck.record("epsilon measure violates p-NC", !pnc_report(mu).all_hold);
    bool trunc_all = true;
    for (int k = 0; k <= 3; ++k) trunc_all = trunc_all && pnc_report(mu.truncate(k)).all_hold;
    ck.record("all four truncations satisfy p-NC", trunc_all);
  }

  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_coefficient_system(const SuiteConfig& cfg) {
  SuiteResult res{"coefficient-system", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);
  bool sigma_ok = true;
  for (int k = 1; k <= cfg.k_max; ++k) {
    sigma_ok = sigma_ok && sigma_value(k) == Rational(3 * k, 2) * chi_triple(table, k).chi;
  }
  ck.record("sigma recursion matches (3k/2) chi_k for k <= " + std::to_string(cfg.k_max), sigma_ok);

  const auto binom = binomial_identity_suite(200);
  ck.record("alternating binomial identities for k <= 200", binom.all_hold,
            std::to_string(binom.checks) + " checks");

  const auto rec = recursion_identity_suite(table, cfg.k_max);
  ck.record("chi recursions and convolution identities for k <= " + std::to_string(cfg.k_max), rec.all_hold,
            std::to_string(rec.checks) + " checks");

  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_asym_tables(const SuiteConfig& cfg) {
  SuiteResult res{"asym-tables", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);
  const auto count_golden = json::parse(read_file(cfg.golden_dir + "/asym/count.json"));
  const auto pair_golden = json::parse(read_file(cfg.golden_dir + "/asym/pair.json"));
  for (int k = 0; k <= 5; ++k) {
    const auto exp = cnnk_expansion(table, k);
    const auto expected = count_golden.at(std::to_string(k));
    bool ok = exp.terms.size() == 3;
    for (int i = 0; i < 3 && ok; ++i) {
      ok = exp.coeff(3 * k - 1 - i) == SymCoeff::parse(expected[static_cast<size_t>(i)].get<std::string>());
    }
    ck.record("count expansion matches table at k=" + std::to_string(k), ok);
  }
  for (int k = 0; k <= 5; ++k) {
    const auto exp = cnnkef_expansion(table, k);
    const auto expected = pair_golden.at(std::to_string(k));
    bool ok = exp.terms.size() == 3;
    for (int i = 0; i < 3 && ok; ++i) {
      ok = exp.coeff(3 * k - 5 - i) == SymCoeff::parse(expected[static_cast<size_t>(i)].get<std::string>());
    }
    ck.record("pair expansion matches table at k=" + std::to_string(k), ok);
  }
  bool leading = true;
  for (int k = 1; k <= cfg.k_max; ++k) leading = leading && leading_order_checks(table, k).all_hold();
  ck.record("leading-order identities for k <= " + std::to_string(cfg.k_max), leading);
  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_ratio_law(const SuiteConfig& cfg) {
  SuiteResult res{"ratio-law", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);
  for (int k = 0; k <= cfg.k_max; ++k) {
    bool ok = true;
    std::string info;
    try {
      const auto ratio = p1_ratio(table, k);
      const auto verdict = pnc_asymptotic_verdict(table, k);
      ok = verdict.holds && verdict.margin_n2 == Rational(1) && verdict.margin_n3 == Rational(2 * (k + 1));
      info = ratio.to_string();
    } catch (const std::exception& e) {
      ok = false;
      info = e.what();
    }
    ck.record("ratio law and margins at k=" + std::to_string(k), ok, info);
  }
  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_convergence(const SuiteConfig& cfg) {
  SuiteResult res{"convergence", true, json::object()};
  Checker ck;
  const auto& table = shared_wright_table(cfg.k_max);
  json tables = json::object();
  {
    const auto rows = convergence_report(table, 0, {100});
    ck.record("three-term unicyclic expansion within 1% at n=100", rows[0].rel_error <= 0.01,
              "relError=" + std::to_string(rows[0].rel_error));
  }
  for (int k = 0; k <= 2; ++k) {
    const auto rows = convergence_report(table, k, {20, 40, 80, 160});
    bool monotone = true;
    json t = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i > 0) monotone = monotone && rows[i].rel_error < rows[i - 1].rel_error;
      json row;
      row["n"] = rows[i].n;
      row["exact"] = rows[i].exact;
      row["expansion"] = rows[i].expansion;
      row["relError"] = rows[i].rel_error;
      row["scaledResidual"] = rows[i].scaled_residual;
      t.push_back(row);
    }
    tables[std::to_string(k)] = t;
    ck.record("relative error decreases over n in {20,40,80,160} at k=" + std::to_string(k), monotone);
  }
  res.detail["checks"] = ck.rows;
  res.detail["tables"] = tables;
  res.pass = ck.pass;
  return res;
}

SuiteResult suite_percolation(const SuiteConfig& cfg) {
  SuiteResult res{"percolation", true, json::object()};
  Checker ck;

  for (int n = 3; n <= std::min(cfg.brute_max_n, 6); ++n) {
    const Rational direct = exact_disconnect_probability(n, Conditioning::NONE);
    const auto& classes = classes_for(n, cfg.threads);
    BigInt connected(0);
    for (const auto& [key, s] : classes)
      if (key.components == 1) connected += BigInt(static_cast<unsigned long>(s.count));
    const Rational brute =
        Rational(1) - Rational(connected, big_pow(BigInt(2), static_cast<unsigned long>(n) * (n - 1) / 2));
    ck.record("disconnect probability vs brute at n=" + std::to_string(n), direct == brute);
  }

  bool ie_all = true;
  for (int n = 4; n <= cfg.brute_max_n; ++n) {
    for (Conditioning c : {Conditioning::NONE, Conditioning::EDGE_OPEN, Conditioning::ADJ_PAIR_OPEN,
                           Conditioning::DISJ_PAIR_OPEN}) {
      // brute: enumerate with forced edges open, count isolated-vertex configs
      const auto g = LabeledGraph::complete(n);
      const auto edges = expanded_edges(g);
      std::vector<std::pair<int, int>> forced;
      if (c == Conditioning::EDGE_OPEN) forced = {{0, 1}};
      if (c == Conditioning::ADJ_PAIR_OPEN) forced = {{0, 1}, {0, 2}};
      if (c == Conditioning::DISJ_PAIR_OPEN) forced = {{0, 1}, {2, 3}};
      uint32_t fmask = 0;
      for (auto want : forced)
        for (size_t i = 0; i < edges.size(); ++i)
          if (edges[i] == want) fmask |= (1u << i);
      uint64_t all = 0, hit = 0;
      for (uint64_t mask = 0; mask < (1ull << edges.size()); ++mask) {
        if ((mask & fmask) != fmask) continue;
        ++all;
        int deg[32] = {};
        for (uint32_t rem = static_cast<uint32_t>(mask); rem; rem &= rem - 1) {
          const int i = std::countr_zero(rem);
          ++deg[edges[static_cast<size_t>(i)].first];
          ++deg[edges[static_cast<size_t>(i)].second];
        }
        bool iso = false;
        for (int v = 0; v < n; ++v) iso |= (deg[v] == 0);
        if (iso) ++hit;
      }
      ie_all = ie_all && isolated_ie_exact(n, c) == Rational(BigInt(static_cast<unsigned long>(hit)),
                                                             BigInt(static_cast<unsigned long>(all)));
    }
  }
  ck.record("isolated-vertex sums vs brute for all conditionings, n <= " + std::to_string(cfg.brute_max_n), ie_all);

  bool bonf_all = true;
  for (int n = 3; n <= std::min(cfg.brute_max_n, 6); ++n) {
    for (Conditioning c : {Conditioning::NONE, Conditioning::EDGE_OPEN}) {
      const auto rep = bonferroni_bracket(n, c);
      bonf_all = bonf_all && rep.brackets_hold && rep.tails_bounded && rep.full_sum_exact;
    }
  }
  ck.record("bonferroni brackets at every depth", bonf_all);

  {
    const auto est = mc_disconnect(7, Conditioning::NONE, cfg.trials, cfg.seed, 1);
    const double exact = exact_disconnect_probability(7, Conditioning::NONE).to_double();
    const double err = std::abs(est.estimate - exact);
    ck.record("monte carlo at n=7 within 4 standard errors",
              err <= 4.0 * est.stderr_value,
              "err=" + std::to_string(err) + " stderr=" + std::to_string(est.stderr_value));
    const auto est2 = mc_disconnect(7, Conditioning::NONE, cfg.trials, cfg.seed, 1);
    ck.record("monte carlo reproducibility for fixed seed", est.successes == est2.successes);
  }

  {
    const auto rows = second_order_residuals({20, 30});
    ck.record("second-order residual bounded by 2 at n=20",
              rows[0].residual.abs() <= Rational(2), rows[0].residual.to_string());
    ck.record("second-order residual bounded by 2 at n=30",
              rows[1].residual.abs() <= Rational(2), rows[1].residual.to_string());
  }

  res.detail["checks"] = ck.rows;
  res.pass = ck.pass;
  return res;
}

std::vector<std::string> suite_names() {
  return {"golden-wk",   "oracle-counts", "pnc-verdicts", "counterexamples", "coefficient-system",
          "asym-tables", "ratio-law",     "convergence",  "percolation"};
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "golden-wk") return suite_golden_wk(cfg);
  if (name == "oracle-counts") return suite_oracle_counts(cfg);
  if (name == "pnc-verdicts") return suite_pnc_verdicts(cfg);
  if (name == "counterexamples") return suite_counterexamples(cfg);
  if (name == "coefficient-system") return suite_coefficient_system(cfg);
  if (name == "asym-tables") return suite_asym_tables(cfg);
  if (name == "ratio-law") return suite_ratio_law(cfg);
  if (name == "convergence") return suite_convergence(cfg);
  if (name == "percolation") return suite_percolation(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

json verify_all(const SuiteConfig& cfg) {
  json report;
  report["config"] = {{"bruteMaxN", cfg.brute_max_n}, {"kMax", cfg.k_max},     {"trials", cfg.trials},
                      {"seed", cfg.seed},             {"threads", cfg.threads}};
  json suites = json::array();
  bool pass = true;
  for (const auto& name : suite_names()) {
    const auto res = run_suite(name, cfg);
    json s;
    s["suite"] = res.name;
    s["pass"] = res.pass;
    s["detail"] = res.detail;
    suites.push_back(s);
    pass = pass && res.pass;
  }
  report["suites"] = suites;
  report["pass"] = pass;
  return report;
}

}  // namespace countlab

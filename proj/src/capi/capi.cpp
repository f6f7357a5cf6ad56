#include "countlab.h"

#include <cstring>
#include <functional>
#include <string>

#include <json.hpp>

#include "core/suites.hpp"

using nlohmann::json;
using namespace countlab;

struct cl_session {
  std::string last_error;
};

struct cl_graph {
  LabeledGraph graph;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cl_status guard(cl_session* session, const std::function<void()>& body) {
  if (!session) return CL_ERR_INVALID_ARGUMENT;
  session->last_error.clear();
  try {
    body();
    return CL_OK;
  } catch (const invariant_error& e) {
    session->last_error = e.what();
    return CL_ERR_INVARIANT;
  } catch (const json::exception& e) {
    session->last_error = e.what();
    return CL_ERR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    session->last_error = e.what();
    return CL_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    session->last_error = e.what();
    return CL_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    session->last_error = e.what();
    return CL_ERR_DOMAIN;
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return CL_ERR_INTERNAL;
  }
}

LabeledGraph graph_from_params(const json& params) {
  if (params.contains("graph")) {
    const auto& g = params.at("graph");
    return LabeledGraph::from_json(g.is_string() ? g.get<std::string>() : g.dump());
  }
  if (params.contains("n")) return LabeledGraph::complete(params.at("n").get<int>());
  throw std::invalid_argument("expected 'graph' or 'n'");
}

SuiteConfig config_from_params(const json& params) {
  SuiteConfig cfg;
  if (params.contains("bruteMaxN")) cfg.brute_max_n = params.at("bruteMaxN").get<int>();
  if (params.contains("kMax")) cfg.k_max = params.at("kMax").get<int>();
  if (params.contains("trials")) cfg.trials = params.at("trials").get<long>();
  if (params.contains("seed")) cfg.seed = params.at("seed").get<uint64_t>();
  if (params.contains("threads")) cfg.threads = params.at("threads").get<int>();
  if (params.contains("goldenDir")) cfg.golden_dir = params.at("goldenDir").get<std::string>();
  if (cfg.brute_max_n < 4 || cfg.brute_max_n > 8) throw std::invalid_argument("bruteMaxN must lie in [4, 8]");
  if (cfg.k_max < 5 || cfg.k_max > 16) throw std::invalid_argument("kMax must lie in [5, 16]");
  return cfg;
}

json asym_to_json(const AsymExpansion& e) {
  json terms = json::array();
  for (const auto& [p, c] : e.terms) terms.push_back({{"halfExponent", p}, {"coeff", c.to_string()}});
  json out;
  out["level"] = e.level == Prefactor::COUNT_LEVEL ? "count" : "coefficient";
  out["terms"] = terms;
  out["display"] = e.to_string();
  if (e.error_p != kExactExpansion) out["errorHalfExponent"] = e.error_p;
  return out;
}

json pnc_report_to_json(const PncReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"e", r.e},
                    {"f", r.f},
                    {"lhs", r.lhs.to_string()},
                    {"rhs", r.rhs.to_string()},
                    {"holds", r.holds},
                    {"equality", r.equality}});
  }
  json out;
  out["pairs"] = rows;
  out["pass"] = rep.all_hold;
  if (rep.has_ratio) {
    out["maxRatioNum"] = rep.max_ratio_num.to_string();
    out["maxRatioDen"] = rep.max_ratio_den.to_string();
    out["factorTwoBound"] = rep.ratio_at_most(2);
  }
  return out;
}

json run_op(const std::string& op, const json& params) {
  json out;
  if (op == "count") {
    const int k = params.value("k", 1);
    const std::string family = params.value("family", "kforest");
    const std::string method = params.value("method", "closed");
    Rational value;
    if (family == "kforest") {
      if (method == "closed") {
        value = kforest_count_Kn(params.at("n").get<long>(), k);
      } else if (method == "liu-chow") {
        value = liu_chow_count(graph_from_params(params), k, params.value("vStar", 0));
      } else if (method == "brute") {
        const auto g = graph_from_params(params);
        value = Rational(BigInt(static_cast<unsigned long>(
            tally_family(g, {Family::K_FORESTS, k}, false).family_size)));
      } else {
        throw std::invalid_argument("count: method must be closed|liu-chow|brute for k-forests");
      }
    } else if (family == "kexcess") {
      if (method == "series") {
        value = exact_connected_count(shared_wright_table(std::max(12, k)), params.at("n").get<long>(), k);
      } else if (method == "brute") {
        const auto g = graph_from_params(params);
        value = Rational(BigInt(static_cast<unsigned long>(
            tally_family(g, {Family::K_EXCESS_CONNECTED, k}, false).family_size)));
      } else {
        throw std::invalid_argument("count: method must be series|brute for excess families");
      }
    } else if (family == "trees") {
      value = matrix_tree_count(graph_from_params(params));
    } else {
      throw std::invalid_argument("count: family must be kforest|kexcess|trees");
    }
    out["value"] = value.to_string();
    return out;
  }
  if (op == "pair-count") {
    const int k = params.at("k").get<int>();
    const std::string family = params.value("family", "kforest");
    if (family == "kforest") {
      out["value"] = kforest_pair_count_Kn(params.at("n").get<long>(), k).to_string();
    } else if (family == "kexcess") {
      out["value"] = exact_pair_count_small_excess(params.at("n").get<long>(), k).to_string();
    } else {
      throw std::invalid_argument("pair-count: family must be kforest|kexcess");
    }
    return out;
  }
  if (op == "verify-pnc") {
    const std::string family = params.at("family").get<std::string>();
    const int n_max = params.at("nMax").get<int>();
    const int n_min = params.value("nMin", 4);
    json verdicts = json::array();
    bool pass = true;
    if (family == "kuf") {
      for (int n = n_min; n <= n_max; ++n)
        for (int k = 2; k <= n; ++k) {
          const auto v = pnc_kuf_verdict(n, k);
          verdicts.push_back(json::parse(pnc_verdict_to_json(v)));
          pass = pass && v.holds();
        }
      // Empirical: smallest n at which both bounds hold for each k (an
      // observation, not a claimed threshold).
      json smallest = json::array();
      for (int k = 2; k <= n_max; ++k) {
        int found = -1;
        for (int n = std::max(4, k); n <= 200; ++n) {
          if (pnc_kuf_verdict(n, k).holds()) {
            found = n;
            break;
          }
        }
        smallest.push_back({{"k", k}, {"n", found}});
      }
      out["empiricalSmallestN"] = smallest;
    } else if (family == "kuc") {
      const auto& table = shared_wright_table(12);
      for (int n = n_min; n <= n_max; ++n)
        for (int k = -1; n + k <= n * (n - 1) / 2; ++k) {
          const auto v = pnc_kuc_verdict(table, n, k);
          verdicts.push_back(json::parse(pnc_verdict_to_json(v)));
          pass = pass && v.holds();
        }
    } else if (family == "uc") {
      for (int n = n_min; n <= n_max; ++n) {
        const auto rep = uc_pnc_counting_check(n);
        const bool ok = rep.adjacent_holds && rep.disjoint_holds && rep.probability_form_agrees;
        verdicts.push_back({{"n", n},
                            {"connected", rep.connected.get_str()},
                            {"withEdge", rep.with_edge.get_str()},
                            {"withAdjPair", rep.with_adj_pair.get_str()},
                            {"withDisjPair", rep.with_disj_pair.get_str()},
                            {"holds", ok}});
        pass = pass && ok;
      }
    } else {
      throw std::invalid_argument("verify-pnc: family must be kuf|kuc|uc");
    }
    out["verdicts"] = verdicts;
    out["pass"] = pass;
    return out;
  }
  if (op == "gf-wk") {
    const int k = params.at("k").get<int>();
    const auto& table = shared_wright_table(std::max(12, k));
    out["k"] = k;
    out["laurent"] = json::parse(table.w(k).to_json());
    out["display"] = table.w(k).to_string();
    return out;
  }
  if (op == "gf-count") {
    const auto& table = shared_wright_table(std::max(12, params.at("k").get<int>()));
    out["value"] = exact_connected_count(table, params.at("n").get<long>(), params.at("k").get<int>()).to_string();
    return out;
  }
  if (op == "chi") {
    const int k = params.at("k").get<int>();
    const auto& table = shared_wright_table(std::max(12, k));
    const auto t = chi_triple(table, k);
    out["chi"] = t.chi.to_string();
    out["chiTilde"] = t.chi_tilde.to_string();
    out["chiHat"] = t.chi_hat.to_string();
    out["sigma"] = sigma_value(k).to_string();
    out["rho"] = rho_value(k).display();
    return out;
  }
  if (op == "gf-identities") {
    const int k_max = params.value("kMax", 12);
    const auto rep = recursion_identity_suite(shared_wright_table(std::max(12, k_max)), k_max);
    out["pass"] = rep.all_hold;
    out["checks"] = rep.checks;
    out["failures"] = rep.failures;
    return out;
  }
  if (op == "binomial-identities") {
    const auto rep = binomial_identity_suite(params.value("kMax", 200));
    out["pass"] = rep.all_hold;
    out["checks"] = rep.checks;
    out["failures"] = rep.failures;
    return out;
  }
  if (op == "asym-count" || op == "asym-pair") {
    const int k = params.at("k").get<int>();
    const auto& table = shared_wright_table(std::max(12, k));
    return asym_to_json(op == "asym-count" ? cnnk_expansion(table, k) : cnnkef_expansion(table, k));
  }
  if (op == "asym-p1-ratio") {
    const int k = params.at("k").get<int>();
    const auto& table = shared_wright_table(std::max(12, k));
    const auto ratio = p1_ratio(table, k);
    const auto verdict = pnc_asymptotic_verdict(table, k);
    out["display"] = ratio.to_string();
    out["u4"] = ratio.coeff(4).to_string();
    out["u5"] = ratio.coeff(5).to_string();
    out["u6"] = ratio.coeff(6).to_string();
    out["marginN2"] = verdict.margin_n2.to_string();
    out["marginN3"] = verdict.margin_n3.to_string();
    out["pass"] = verdict.holds;
    return out;
  }
  if (op == "asym-leading") {
    const int k_max = params.value("kMax", 12);
    const auto& table = shared_wright_table(std::max(12, k_max));
    bool pass = true;
    json rows = json::array();
    for (int k = 1; k <= k_max; ++k) {
      const auto rep = leading_order_checks(table, k);
      rows.push_back({{"k", k}, {"pass", rep.all_hold()}});
      pass = pass && rep.all_hold();
    }
    out["rows"] = rows;
    out["pass"] = pass;
    return out;
  }
  if (op == "convergence") {
    const int k = params.at("k").get<int>();
    std::vector<long> ns;
    for (const auto& v : params.at("nList")) ns.push_back(v.get<long>());
    const auto rows = convergence_report(shared_wright_table(std::max(12, k)), k, ns);
    json t = json::array();
    for (const auto& r : rows) {
      t.push_back({{"n", r.n},
                   {"exact", r.exact},
                   {"expansion", r.expansion},
                   {"relError", r.rel_error},
                   {"scaledResidual", r.scaled_residual}});
    }
    out["rows"] = t;
    return out;
  }
  if (op == "percolate-exact" || op == "percolate-isolated") {
    const int n = params.at("n").get<int>();
    const auto c = conditioning_from_name(params.value("conditioning", "none"));
    out["n"] = n;
    out["conditioning"] = conditioning_name(c);
    const Rational v = op == "percolate-exact" ? exact_disconnect_probability(n, c) : isolated_ie_exact(n, c);
    out["value"] = v.to_string();
    out["decimal"] = v.to_double();
    return out;
  }
  if (op == "percolate-bonferroni") {
    const int n = params.at("n").get<int>();
    const auto c = conditioning_from_name(params.value("conditioning", "none"));
    const auto rep = bonferroni_bracket(n, c);
    json sums = json::array();
    for (const auto& s : rep.partial_sums) sums.push_back(s.to_string());
    out["partialSums"] = sums;
    out["exactUnion"] = rep.exact_union.to_string();
    out["bracketsHold"] = rep.brackets_hold;
    out["tailsBounded"] = rep.tails_bounded;
    out["fullSumExact"] = rep.full_sum_exact;
    out["pass"] = rep.brackets_hold && rep.tails_bounded && rep.full_sum_exact;
    return out;
  }
  if (op == "percolate-mc") {
    const int n = params.at("n").get<int>();
    const auto c = conditioning_from_name(params.value("conditioning", "none"));
    const auto est = mc_disconnect(n, c, params.value("trials", 100000L), params.value("seed", uint64_t{20240501}),
                                   params.value("workers", 1));
    out["n"] = n;
    out["conditioning"] = conditioning_name(c);
    out["trials"] = est.trials;
    out["successes"] = est.successes;
    out["estimate"] = est.estimate;
    out["stderr"] = est.stderr_value;
    out["seed"] = est.seed;
    out["workers"] = est.workers;
    out["rng"] = est.rng;
    return out;
  }
  if (op == "percolate-residuals") {
    std::vector<int> ns;
    for (const auto& v : params.at("nList")) ns.push_back(v.get<int>());
    const auto rows = second_order_residuals(ns);
    json t = json::array();
    for (const auto& r : rows) {
      t.push_back({{"n", r.n},
                   {"disconnect", r.disconnect.to_string()},
                   {"residual", r.residual.to_string()},
                   {"residualValue", r.residual_value}});
    }
    out["rows"] = t;
    return out;
  }
  if (op == "uc-counting") {
    const auto rep = uc_pnc_counting_check(params.at("n").get<int>());
    out["connected"] = rep.connected.get_str();
    out["withEdge"] = rep.with_edge.get_str();
    out["withAdjPair"] = rep.with_adj_pair.get_str();
    out["withDisjPair"] = rep.with_disj_pair.get_str();
    out["adjacentHolds"] = rep.adjacent_holds;
    out["disjointHolds"] = rep.disjoint_holds;
    out["probabilityFormAgrees"] = rep.probability_form_agrees;
    out["pass"] = rep.adjacent_holds && rep.disjoint_holds && rep.probability_form_agrees;
    return out;
  }
  if (op == "ranks") {
    const auto g = graph_from_params(params);
    const auto rep = rank_sequence(g, params.value("threads", 1));
    json b = json::array();
    for (const auto& v : rep.b) b.push_back(v.get_str());
    out["b"] = b;
    out["unimodal"] = rep.unimodal;
    out["logConcave"] = rep.log_concave;
    out["stronglyLogConcave"] = rep.strongly_log_concave;
    out["ultraLogConcave"] = rep.ultra_log_concave;
    return out;
  }
  if (op == "measure-pnc") {
    return pnc_report_to_json(pnc_report(FiniteMeasure::from_json(params.at("measure").dump())));
  }
  if (op == "measure-truncate") {
    const auto mu = FiniteMeasure::from_json(params.at("measure").dump());
    return json::parse(mu.truncate(params.at("k").get<int>()).to_json());
  }
  if (op == "measure-lattice") {
    const auto mu = FiniteMeasure::from_json(params.at("measure").dump());
    out["verdict"] = lattice_verdict_name(lattice_condition(mu));
    return out;
  }
  if (op == "lambda-check") {
    const int n = params.at("n").get<int>();
    const int k = params.at("k").get<int>();
    const auto rep = verify_lambda_decomposition(shared_wright_table(std::max(12, k)), n, k);
    out["lambda1"] = rep.lambda1;
    out["lambda2"] = rep.lambda2;
    out["lambda3"] = rep.lambda3;
    out["lambda2Hat"] = rep.lambda2_hat;
    out["pairCount"] = rep.pair_count;
    out["pass"] = rep.all_hold();
    return out;
  }
  if (op == "examples") {
    json fixtures = json::array();
    bool pass = true;
    {
      const auto mu = nc_vs_truncation_measure();
      const bool holds = pnc_report(mu).all_hold;
      const bool trunc_fails = !pnc_report(mu.truncate(2)).all_hold;
      fixtures.push_back({{"name", "nc-holds-but-2-truncation-fails"},
                          {"measureHolds", holds},
                          {"truncationFails", trunc_fails},
                          {"pass", holds && trunc_fails}});
      pass = pass && holds && trunc_fails;
    }
    {
      const auto mu = truncation_vs_nc_measure(Rational(1, 16));
      const bool fails = !pnc_report(mu).all_hold;
      bool trunc_all = true;
      for (int k = 0; k <= 3; ++k) trunc_all = trunc_all && pnc_report(mu.truncate(k)).all_hold;
      fixtures.push_back({{"name", "truncations-hold-but-nc-fails"},
                          {"measureFails", fails},
                          {"truncationsHold", trunc_all},
                          {"pass", fails && trunc_all}});
      pass = pass && fails && trunc_all;
    }
    {
      const auto g = two_forest_counterexample_graph();
      const auto rep = pnc_report_from_tally(tally_family(g, {Family::K_FORESTS, 2}, true));
      fixtures.push_back({{"name", "two-forest-counterexample"},
                          {"violationFound", !rep.all_hold},
                          {"factorTwoBound", rep.ratio_at_most(2)},
                          {"pass", !rep.all_hold && rep.ratio_at_most(2)}});
      pass = pass && !rep.all_hold && rep.ratio_at_most(2);
    }
    out["fixtures"] = fixtures;
    out["pass"] = pass;
    return out;
  }
  if (op == "suite") {
    const auto res = run_suite(params.at("name").get<std::string>(), config_from_params(params));
    out["suite"] = res.name;
    out["pass"] = res.pass;
    out["detail"] = res.detail;
    return out;
  }
  if (op == "verify-all") {
    return verify_all(config_from_params(params));
  }
  throw std::invalid_argument("unknown operation '" + op + "'");
}

}  // namespace

extern "C" {

const char* cl_version(void) { return "countlab 1.0.0"; }

const char* cl_status_name(cl_status status) {
  switch (status) {
    case CL_OK: return "ok";
    case CL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case CL_ERR_DOMAIN: return "domain-error";
    case CL_ERR_INVARIANT: return "invariant-breach";
    case CL_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

cl_status cl_session_new(cl_session** out) {
  if (!out) return CL_ERR_INVALID_ARGUMENT;
  *out = new cl_session();
  return CL_OK;
}

void cl_session_free(cl_session* session) { delete session; }

const char* cl_session_last_error(const cl_session* session) {
  return session ? session->last_error.c_str() : "";
}

cl_status cl_graph_complete(cl_session* session, int n, cl_graph** out) {
  if (!out) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() { *out = new cl_graph{LabeledGraph::complete(n)}; });
}

cl_status cl_graph_parse_json(cl_session* session, const char* text, cl_graph** out) {
  if (!out || !text) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() { *out = new cl_graph{LabeledGraph::from_json(text)}; });
}

cl_status cl_graph_parse_edge_list(cl_session* session, const char* text, cl_graph** out) {
  if (!out || !text) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() { *out = new cl_graph{LabeledGraph::from_edge_list(text)}; });
}

void cl_graph_free(cl_graph* graph) { delete graph; }

cl_status cl_graph_canonical_json(cl_session* session, const cl_graph* graph, char** out) {
  if (!graph || !out) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() { *out = dup_string(graph->graph.to_json()); });
}

cl_status cl_graph_spanning_tree_count(cl_session* session, const cl_graph* graph, char** out) {
  if (!graph || !out) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() { *out = dup_string(matrix_tree_count(graph->graph).to_string()); });
}

cl_status cl_graph_kforest_count(cl_session* session, const cl_graph* graph, int k, char** out) {
  if (!graph || !out) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() { *out = dup_string(liu_chow_count(graph->graph, k).to_string()); });
}

cl_status cl_run(cl_session* session, const char* op, const char* params_json, char** result_json) {
  if (!op || !result_json) return CL_ERR_INVALID_ARGUMENT;
  return guard(session, [&]() {
    const json params = (params_json && *params_json) ? json::parse(params_json) : json::object();
    *result_json = dup_string(run_op(op, params).dump(2));
  });
}

void cl_string_free(char* text) { delete[] text; }

}  // extern "C"

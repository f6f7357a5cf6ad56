// countlab command-line front end. Everything goes through the C API in
// include/countlab.h; results are JSON documents (or CSV renderings of their
// row tables).

#include <countlab.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

struct Output {
  std::string path;     // empty = stdout
  std::string format;   // "json" or "csv"
};

int env_threads() {
  const char* v = std::getenv("COUNTLAB_THREADS");
  if (!v) return 1;
  const int t = std::atoi(v);
  return t >= 1 ? t : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw CLI::ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_list(const std::string& csv) {
  json arr = json::array();
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) arr.push_back(std::stol(item));
  }
  return arr;
}

std::string to_csv(const json& doc) {
  // Render the first array of flat objects found under "rows"/"verdicts"/
  // "pairs"/"fixtures"; otherwise fall back to JSON.
  const char* keys[] = {"rows", "verdicts", "pairs", "fixtures", "checks"};
  for (const char* key : keys) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) continue;
    const auto& rows = doc[key];
    std::vector<std::string> cols;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
    std::ostringstream out;
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < cols.size(); ++i) {
        const auto& v = row.value(cols[i], json());
        out << (i ? "," : "");
        if (v.is_string()) out << v.get<std::string>();
        else out << v.dump();
      }
      out << "\n";
    }
    return out.str();
  }
  return doc.dump(2) + "\n";
}

// Name of the first failing check anywhere in the report.
std::string first_failure(const json& doc) {
  if (doc.is_object()) {
    if (doc.value("pass", true) == false) {
      for (const char* label : {"check", "suite", "name"}) {
        if (doc.contains(label) && doc[label].is_string()) return doc[label].get<std::string>();
      }
    }
    for (const auto& [key, value] : doc.items()) {
      (void)key;
      const std::string found = first_failure(value);
      if (!found.empty()) return found;
    }
  } else if (doc.is_array()) {
    for (const auto& value : doc) {
      const std::string found = first_failure(value);
      if (!found.empty()) return found;
    }
  }
  return "";
}

// Runs one op; returns the process exit code.
int run(cl_session* session, const std::string& op, const json& params, const Output& output) {
  char* result = nullptr;
  const cl_status status = cl_run(session, op.c_str(), params.dump().c_str(), &result);
  if (status != CL_OK) {
    std::cerr << "error (" << cl_status_name(status) << "): " << cl_session_last_error(session) << "\n";
    return status == CL_ERR_INVALID_ARGUMENT ? 2 : 1;
  }
  const json doc = json::parse(result);
  cl_string_free(result);
  std::string text = output.format == "csv" ? to_csv(doc) : doc.dump(2) + "\n";
  if (output.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output.path, std::ios::binary);
    out << text;
  }
  if (doc.contains("pass") && doc["pass"].is_boolean() && !doc["pass"].get<bool>()) {
    const std::string name = first_failure(doc);
    std::cerr << "verification failed: " << (name.empty() ? "see report" : name) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"countlab: exact subgraph enumeration, correlation checks, and coefficient asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();

  Output output;
  app.add_option("--out", output.path, "write the report to a file instead of stdout");
  output.format = "json";
  app.add_option("--format", output.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::string op;
  json params = json::object();

  // count ---------------------------------------------------------------
  auto* count = app.add_subcommand("count", "exact family counts");
  int count_n = 0, count_k = 1, v_star = 0;
  std::string count_graph, count_family = "kforest", count_method = "closed";
  count->add_option("--complete", count_n, "host K_n");
  count->add_option("--graph", count_graph, "host graph file (JSON or edge list)");
  count->add_option("--k", count_k, "component count (k-forests) or excess");
  count->add_option("--family", count_family)->check(CLI::IsMember({"kforest", "kexcess", "trees"}));
  count->add_option("--method", count_method)->check(CLI::IsMember({"closed", "liu-chow", "series", "brute"}));
  count->add_option("--v-star", v_star, "fixed vertex for the subset formula");
  count->callback([&]() {
    op = "count";
    params["k"] = count_k;
    params["family"] = count_family;
    params["method"] = count_method;
    params["vStar"] = v_star;
    if (!count_graph.empty()) {
      const std::string text = read_file(count_graph);
      if (!text.empty() && text.find('{') != std::string::npos) params["graph"] = json::parse(text);
      else params["graph"] = text;  // edge list: pass through as text
    }
    if (count_n > 0) params["n"] = count_n;
  });

  // verify-pnc ------------------------------------------------------------
  auto* pnc = app.add_subcommand("verify-pnc", "pairwise negative correlation verdicts");
  std::string pnc_family = "kuf";
  int n_max = 7, n_min = 4;
  pnc->add_option("--family", pnc_family)->check(CLI::IsMember({"kuf", "kuc", "uc"}));
  pnc->add_option("--n-max", n_max);
  pnc->add_option("--n-min", n_min);
  pnc->callback([&]() {
    op = "verify-pnc";
    params["family"] = pnc_family;
    params["nMax"] = n_max;
    params["nMin"] = n_min;
  });

  // gf ---------------------------------------------------------------------
  auto* gf = app.add_subcommand("gf", "generating functions in theta");
  int wk = -100, gf_n = 0, gf_k = -100, chi_k = 0, ident_k = 0, binom_k = 0;
  gf->add_option("--print-wk", wk, "print W_k as a Laurent polynomial");
  gf->add_option("--count-n", gf_n, "exact count: n");
  gf->add_option("--count-k", gf_k, "exact count: excess k");
  gf->add_option("--chi", chi_k, "leading coefficients and sigma/rho at k");
  gf->add_option("--identities", ident_k, "run the recursion identity suite to k");
  gf->add_option("--binomial", binom_k, "run the binomial identity suite to k");
  gf->callback([&]() {
    if (wk != -100) {
      op = "gf-wk";
      params["k"] = wk;
    } else if (gf_n > 0 && gf_k != -100) {
      op = "gf-count";
      params["n"] = gf_n;
      params["k"] = gf_k;
    } else if (chi_k > 0) {
      op = "chi";
      params["k"] = chi_k;
    } else if (ident_k > 0) {
      op = "gf-identities";
      params["kMax"] = ident_k;
    } else if (binom_k > 0) {
      op = "binomial-identities";
      params["kMax"] = binom_k;
    } else {
      throw CLI::ValidationError("gf: pick one of --print-wk, --count-n/--count-k, --chi, --identities, --binomial");
    }
  });

  // asym ---------------------------------------------------------------------
  auto* asym = app.add_subcommand("asym", "symbolic asymptotic expansions");
  int cnnk = -100, cnnkef = -100, ratio_k = -100, leading_k = 0;
  std::string conv_ns = "20,40,80";
  bool p1_flag = false, conv_flag = false;
  asym->add_option("--cnnk", cnnk, "three-term count expansion at excess k");
  asym->add_option("--cnnkef", cnnkef, "three-term pair-count expansion at excess k");
  asym->add_flag("--p1-ratio", p1_flag, "ratio law p1 = 3/n^2 + 9(k+1)/n^3");
  asym->add_option("--k", ratio_k, "excess for --p1-ratio or --convergence");
  asym->add_option("--leading", leading_k, "leading-order checks up to k");
  asym->add_flag("--convergence", conv_flag, "exact-vs-expansion table (with --k, --n-list)");
  asym->add_option("--n-list", conv_ns, "comma-separated n values");
  asym->callback([&]() {
    if (cnnk != -100) {
      op = "asym-count";
      params["k"] = cnnk;
    } else if (cnnkef != -100) {
      op = "asym-pair";
      params["k"] = cnnkef;
    } else if (p1_flag) {
      if (ratio_k == -100) throw CLI::ValidationError("asym --p1-ratio needs --k");
      op = "asym-p1-ratio";
      params["k"] = ratio_k;
    } else if (leading_k > 0) {
      op = "asym-leading";
      params["kMax"] = leading_k;
    } else if (conv_flag) {
      if (ratio_k == -100) throw CLI::ValidationError("asym --convergence needs --k");
      op = "convergence";
      params["k"] = ratio_k;
      params["nList"] = parse_list(conv_ns);
    } else {
      throw CLI::ValidationError("asym: pick one of --cnnk, --cnnkef, --p1-ratio, --leading, --convergence");
    }
  });

  // percolate ------------------------------------------------------------
  auto* perc = app.add_subcommand("percolate", "Bernoulli(1/2) percolation checks");
  int perc_n = 7;
  long trials = 100000;
  uint64_t seed = 20240501;
  int workers = 1;
  std::string conditioning = "none", residual_ns;
  std::string mode = "exact";
  perc->add_option("--n", perc_n);
  perc->add_option("--conditioning", conditioning)->check(CLI::IsMember({"none", "edge", "adj-pair", "disj-pair"}));
  perc->add_option("--mode", mode)->check(CLI::IsMember({"exact", "isolated", "bonferroni", "mc", "counting"}));
  perc->add_option("--trials", trials);
  perc->add_option("--seed", seed);
  perc->add_option("--workers", workers);
  perc->add_option("--residuals", residual_ns, "comma-separated n values for the residual table");
  perc->callback([&]() {
    if (!residual_ns.empty()) {
      op = "percolate-residuals";
      params["nList"] = parse_list(residual_ns);
      return;
    }
    params["n"] = perc_n;
    params["conditioning"] = conditioning;
    if (mode == "exact") op = "percolate-exact";
    else if (mode == "isolated") op = "percolate-isolated";
    else if (mode == "bonferroni") op = "percolate-bonferroni";
    else if (mode == "counting") op = "uc-counting";
    else {
      op = "percolate-mc";
      params["trials"] = trials;
      params["seed"] = seed;
      params["workers"] = workers;
    }
  });

  // examples / ranks / verify-all -------------------------------------------
  auto* examples = app.add_subcommand("examples", "run the bundled counterexample fixtures");
  examples->callback([&]() { op = "examples"; });

  auto* ranks = app.add_subcommand("ranks", "forest rank sequence and log-concavity ladder");
  int ranks_n = 0;
  std::string ranks_graph;
  ranks->add_option("--complete", ranks_n);
  ranks->add_option("--graph", ranks_graph);
  ranks->callback([&]() {
    op = "ranks";
    if (!ranks_graph.empty()) {
      const std::string text = read_file(ranks_graph);
      if (text.find('{') != std::string::npos) params["graph"] = json::parse(text);
      else params["graph"] = text;
    } else {
      params["n"] = ranks_n > 0 ? ranks_n : 6;
    }
    params["threads"] = env_threads();
  });

  auto* all = app.add_subcommand("verify-all", "run every verification suite at desk scale");
  int brute_max_n = 7, k_max = 12;
  long all_trials = 1000000;
  uint64_t all_seed = 20240501;
  std::string golden_dir = "data/golden";
  all->add_option("--brute-max-n", brute_max_n);
  all->add_option("--k-max", k_max);
  all->add_option("--trials", all_trials);
  all->add_option("--seed", all_seed);
  all->add_option("--golden-dir", golden_dir);
  all->callback([&]() {
    op = "verify-all";
    params["bruteMaxN"] = brute_max_n;
    params["kMax"] = k_max;
    params["trials"] = all_trials;
    params["seed"] = all_seed;
    params["goldenDir"] = golden_dir;
    params["threads"] = env_threads();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cl_session* session = nullptr;
  if (cl_session_new(&session) != CL_OK) {
    std::cerr << "error: cannot create session\n";
    return 1;
  }
  const int rc = run(session, op, params, output);
  cl_session_free(session);
  return rc;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "closed_counts.hpp"
#include "enumerate.hpp"
#include "percolation.hpp"

namespace countlab {

// Shared fixtures -----------------------------------------------------------

// 8-vertex host whose uniform 2-forest measure violates pairwise negative
// correlation at the designated pair (hub edge, pendant edge).
LabeledGraph two_forest_counterexample_graph();

// Measure on 4 elements with Q(sqrt2) weights: p-NC holds (with equality on
// two pairs) while its 2-truncation fails.
FiniteMeasure nc_vs_truncation_measure();

// Measure on 3 elements violating p-NC while every truncation satisfies it.
FiniteMeasure truncation_vs_nc_measure(const Rational& epsilon);

// Suite framework -----------------------------------------------------------

struct SuiteConfig {
  int brute_max_n = 7;      // exhaustive checks run for K_n up to here
  int k_max = 12;           // coefficient/asymptotic depth
  long trials = 1000000;    // Monte Carlo trials for the percolation suite
  uint64_t seed = 20240501; // Monte Carlo seed
  int threads = 1;          // worker count for exhaustive passes
  std::string golden_dir = "data/golden";
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  nlohmann::json detail;
};

// One suite per acceptance area. Each runs every check at its pinned
// tolerance and never throws for a plain verification failure (only for
// broken preconditions).
SuiteResult suite_golden_wk(const SuiteConfig& cfg);
SuiteResult suite_oracle_counts(const SuiteConfig& cfg);
SuiteResult suite_pnc_verdicts(const SuiteConfig& cfg);
SuiteResult suite_counterexamples(const SuiteConfig& cfg);
SuiteResult suite_coefficient_system(const SuiteConfig& cfg);
SuiteResult suite_asym_tables(const SuiteConfig& cfg);
SuiteResult suite_ratio_law(const SuiteConfig& cfg);
SuiteResult suite_convergence(const SuiteConfig& cfg);
SuiteResult suite_percolation(const SuiteConfig& cfg);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

// All suites in order; the report is deterministic for a fixed config.
nlohmann::json verify_all(const SuiteConfig& cfg);

// Shared access to the Wright table used by the suites (built once).
const WrightTable& shared_wright_table(int k_max = 12);

std::string pnc_verdict_to_json(const PncVerdict& v);

}  // namespace countlab

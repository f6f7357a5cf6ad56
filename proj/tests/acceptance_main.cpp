// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Every tolerance is pinned here or inside the suite implementations.

#include <chrono>
#include <cstdio>
#include <string>

#include "core/suites.hpp"

using namespace countlab;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, double seconds) {
  std::printf("%s  criterion %2d  %-34s  (%.2fs)\n", pass ? "PASS" : "FAIL", index, name.c_str(), seconds);
  if (!pass) ++failures;
}

template <typename F>
std::pair<bool, double> timed(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  const bool ok = fn();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return {ok, dt.count()};
}

}  // namespace

int main() {
  SuiteConfig cfg;
  cfg.brute_max_n = 7;
  cfg.k_max = 12;
  cfg.trials = 1000000;
  cfg.seed = 20240501;
  cfg.threads = 1;
#ifdef GOLDEN_DIR
  cfg.golden_dir = GOLDEN_DIR;
#endif

  // 1. Transcribed generating functions, exact equality, under one second.
  {
    const auto [ok, secs] = timed([&]() { return suite_golden_wk(cfg).pass; });
    report(1, "golden generating functions", ok && secs < 1.0, secs);
  }
  // 2. Formulas against the exhaustive oracle, zero tolerance.
  {
    const auto [ok, secs] = timed([&]() { return suite_oracle_counts(cfg).pass; });
    report(2, "oracle-formula agreement", ok, secs);
  }
  // 3. Exact pairwise-negative-correlation verdicts.
  {
    const auto [ok, secs] = timed([&]() { return suite_pnc_verdicts(cfg).pass; });
    report(3, "pnc verdicts", ok, secs);
  }
  // 4. Counterexample fixtures with their exact fractions.
  {
    const auto [ok, secs] = timed([&]() { return suite_counterexamples(cfg).pass; });
    report(4, "counterexample reproduction", ok, secs);
  }
  // 5. Coefficient system: sigma/chi link, binomial identities to k = 200,
  //    recursion and convolution identities to k = 12.
  {
    const auto [ok, secs] = timed([&]() { return suite_coefficient_system(cfg).pass; });
    report(5, "coefficient system", ok, secs);
  }
  // 6. Three-term asymptotic tables, exact symbolic equality.
  {
    const auto [ok, secs] = timed([&]() { return suite_asym_tables(cfg).pass; });
    report(6, "asymptotic tables", ok, secs);
  }
  // 7. Ratio law 3/n^2 + 9(k+1)/n^3 with margins (1, 2(k+1)).
  {
    const auto [ok, secs] = timed([&]() { return suite_ratio_law(cfg).pass; });
    report(7, "ratio law", ok, secs);
  }
  // 8. Numeric convergence: <= 1% at n = 100, monotone over {20,40,80,160}.
  {
    const auto [ok, secs] = timed([&]() { return suite_convergence(cfg).pass; });
    report(8, "convergence", ok, secs);
  }
  // 9. Percolation: exact vs brute, four conditionings, 4-sigma Monte Carlo
  //    at a million trials, residuals bounded by 2.
  {
    const auto [ok, secs] = timed([&]() { return suite_percolation(cfg).pass; });
    report(9, "percolation", ok, secs);
  }
  // 10. Determinism: repeated full runs are byte-identical, and the suite
  //     bodies are unchanged under a different exact-pass worker count.
  {
    const auto [ok, secs] = timed([&]() {
      const auto first = verify_all(cfg);
      const auto second = verify_all(cfg);
      SuiteConfig threaded = cfg;
      threaded.threads = 2;
      const auto third = verify_all(threaded);
      return first.dump() == second.dump() && first.at("suites").dump() == third.at("suites").dump() &&
             first.at("pass").get<bool>();
    });
    report(10, "determinism", ok, secs);
  }

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return 1;
}

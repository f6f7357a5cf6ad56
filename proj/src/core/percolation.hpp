#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace countlab {

// Conditioning for Bernoulli(1/2) percolation on K_n. The conditioned edges
// are fixed representatives (edge transitivity): e = (0,1), adjacent partner
// f = (0,2), disjoint partner e' = (2,3).
enum class Conditioning { NONE, EDGE_OPEN, ADJ_PAIR_OPEN, DISJ_PAIR_OPEN };

std::string conditioning_name(Conditioning c);
Conditioning conditioning_from_name(const std::string& name);
int conditioned_vertex_count(Conditioning c);  // 0, 2, 3, 4

// Exact P[not connected | conditioning]. Unconditioned uses the connected-
// graph recursion (any n up to 60); conditioned cases enumerate (n <= 8).
Rational exact_disconnect_probability(int n, Conditioning c);

// Exact P[some isolated vertex | conditioning] by the full alternating
// inclusion-exclusion sum over the unconditioned vertices.
Rational isolated_ie_exact(int n, Conditioning c);

struct BonferroniReport {
  std::vector<Rational> partial_sums;  // alternating partial sums S_1 - S_2 + ...
  Rational exact_union;
  bool brackets_hold = true;   // odd cuts above, even cuts below
  bool tails_bounded = true;   // |sum_{j>=k} (-1)^{j-1} S_j| <= S_k
  bool full_sum_exact = false; // complete alternating sum equals the union
};

BonferroniReport bonferroni_bracket(int n, Conditioning c);

struct McEstimate {
  long trials = 0;
  long successes = 0;
  double estimate = 0.0;
  double stderr_value = 0.0;
  uint64_t seed = 0;
  int workers = 1;
  std::string rng = "splitmix64";
};

// Monte Carlo estimate of P[not connected | conditioning]; bit-reproducible
// for a fixed (seed, workers): worker i draws from the stream seeded
// seed xor i over its own contiguous block of trials.
McEstimate mc_disconnect(int n, Conditioning c, long trials, uint64_t seed, int workers = 1);

struct UcPncCountingReport {
  BigInt connected;       // |C|
  BigInt with_edge;       // |C^(e)|
  BigInt with_adj_pair;   // |C^(e,f)|, e,f adjacent
  BigInt with_disj_pair;  // |C^(e,e')|, disjoint
  bool adjacent_holds = false;
  bool disjoint_holds = false;
  bool probability_form_agrees = false;
};

// Counting form of pairwise negative correlation for uniform connected
// subgraphs, checked exactly for both pair types, plus the equivalent
// Bernoulli(1/2) probability form.
UcPncCountingReport uc_pnc_counting_check(int n);

struct ResidualRow {
  int n;
  Rational disconnect;   // exact P[not connected]
  Rational residual;     // (P - n x_n) / x_n^2
  double residual_value;
};

std::vector<ResidualRow> second_order_residuals(const std::vector<int>& ns);

struct IsolatedDecompositionRow {
  int n;
  Rational e1_exact;     // P[exactly-one-smallest ... ]: P[some isolated vertex]
  Rational e1_two_term;  // n x_n - n(n-1) x_n^2
  Rational e2_exact;     // P[smallest component has size 2]
  Rational e2_main;      // n(n-1) x_n^2
};

// Small-n decomposition data behind the second-order residuals (report only).
IsolatedDecompositionRow isolated_decomposition_row(int n);

// splitmix64: counter-based 64-bit generator with fixed constants.
inline uint64_t splitmix64(uint64_t seed, uint64_t counter) {
  uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace countlab

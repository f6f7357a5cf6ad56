#pragma once

#include <string>
#include <vector>

#include "enumerate.hpp"
#include "graph.hpp"
#include "series.hpp"
#include "theta.hpp"

namespace countlab {

// Number of spanning forests with exactly k components, by inclusion-
// exclusion over vertex subsets with matching counts and contracted-graph
// tree counts. v_star picks the fixed vertex; the count is invariant.
Rational liu_chow_count(const LabeledGraph& g, int k, int v_star = 0);

// Specialization to complete graphs (closed finite sum).
Rational kforest_count_Kn(long n, int k);

// Number of k-forests of K_n through a fixed pair of adjacent edges.
Rational kforest_pair_count_Kn(long n, int k);

struct KufProbabilities {
  Rational p0;
  Rational p1;
  Rational p2;
};

KufProbabilities kuf_probabilities(long n, int k);

struct PncVerdict {
  long n = 0;
  int k = 0;
  Rational p1;
  Rational bound_adjacent;
  Rational bound_non_adjacent;
  bool holds_adjacent = false;
  bool holds_non_adjacent = false;
  bool holds() const { return holds_adjacent && holds_non_adjacent; }
};

// Exact verdict for the uniform k-forest measure on K_n.
PncVerdict pnc_kuf_verdict(long n, int k);

// Exact verdict for the uniform excess-k connected measure on K_n. Counts
// come from the generating-function routes for k <= 0 and from exhaustive
// enumeration otherwise (so n is capped by the enumeration limit).
PncVerdict pnc_kuc_verdict(const WrightTable& table, int n, int k);

// Laurent expansion of the adjacent-pair probability for uniform k-forests
// in powers of 1/n: coefficient i of the result multiplies n^{-i}. The
// expansion starts 3 n^-2 - 4(k-1) n^-3.
ExactSeries kuf_p1_expansion(int k, int order);

// Verifies the seven alternating binomial identities behind the k-forest
// expansions, exactly, for 1 <= k <= k_max.
IdentityReport binomial_identity_suite(int k_max);

// Number of connected labeled graphs on n vertices (recursion over the
// component of vertex 1).
BigInt connected_labeled_count(int n);

}  // namespace countlab

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "quad2.hpp"
#include "theta.hpp"

namespace countlab {

// Hard ceiling for exhaustive enumeration: 2^28 configurations.
inline constexpr int kEnumerationBitCap = 28;

// Configurations are bitmasks over the host's expanded edge list (parallel
// copies get their own bit), in the host's lexicographic edge order.
using EdgeConfig = uint32_t;

struct ConfigClass {
  int edges;
  int components;
  int excess;
  bool forest;
};

ConfigClass classify(const LabeledGraph& g, EdgeConfig config);

// The expanded (u,v) list defining bit order; throws above the cap.
std::vector<std::pair<int, int>> expanded_edges(const LabeledGraph& g);

enum class Family { ALL, FORESTS, K_FORESTS, CONNECTED, K_EXCESS_CONNECTED, SPANNING_TREES };

struct FamilySpec {
  Family family = Family::ALL;
  int k = 0;  // component count for K_FORESTS, excess for K_EXCESS_CONNECTED

  bool contains(int n, const ConfigClass& c) const;
  std::string name() const;
};

// Aggregate statistics for one class (edge count, component count, forest
// flag) over all configurations, with designated-pair counters that exploit
// the edge-transitivity of complete hosts.
struct ClassStats {
  uint64_t count = 0;
  uint64_t with_edge = 0;       // designated first edge open
  uint64_t with_adj_pair = 0;   // designated adjacent pair fully open
  uint64_t with_disj_pair = 0;  // designated disjoint pair fully open
  uint64_t sum_deg2 = 0;
};

struct ClassKey {
  int edges;
  int components;
  bool forest;
  auto operator<=>(const ClassKey&) const = default;
};

// Single exhaustive pass over all 2^|E| configurations. Deterministic for
// any worker count: the mask space is split into fixed chunks merged in
// index order, and all counters are exact integers.
std::map<ClassKey, ClassStats> enumerate_classes(const LabeledGraph& g, int threads = 1);

// Full per-family statistics, including the per-edge vector and the dense
// upper-triangular pair matrix when requested.
struct SubgraphTally {
  LabeledGraph host;
  FamilySpec family;
  std::vector<std::pair<int, int>> edge_order;
  uint64_t family_size = 0;
  uint64_t sum_deg2 = 0;
  std::map<ClassKey, uint64_t> class_counts;
  std::vector<uint64_t> edge_open;        // per edge, within family
  std::vector<uint64_t> pair_open;        // upper triangular, within family
  bool pairs_collected = false;

  uint64_t pair_count(int i, int j) const;
};

SubgraphTally tally_family(const LabeledGraph& g, const FamilySpec& family, bool collect_pairs = true,
                           int threads = 1);

// Explicit finite measure on {0,1}^ground_size with Quad2 weights.
class FiniteMeasure {
 public:
  FiniteMeasure(int ground_size, std::vector<std::pair<EdgeConfig, Quad2>> atoms);

  static FiniteMeasure uniform_family(const LabeledGraph& g, const FamilySpec& family);
  static FiniteMeasure point_mass(int ground_size, EdgeConfig config);
  static FiniteMeasure from_json(const std::string& text);
  std::string to_json() const;

  int ground_size() const { return ground_size_; }
  const std::vector<std::pair<EdgeConfig, Quad2>>& atoms() const { return atoms_; }
  Quad2 total() const;
  bool is_normalized() const { return total() == Quad2(1); }
  FiniteMeasure normalized() const;

  Quad2 prob_edge(int e) const;
  Quad2 prob_pair(int e, int f) const;
  // Conditional measure on |open| = k; empty level is an error.
  FiniteMeasure truncate(int k) const;

 private:
  int ground_size_;
  std::vector<std::pair<EdgeConfig, Quad2>> atoms_;
};

struct PncPairRow {
  int e;
  int f;
  Quad2 lhs;  // mu[both open]
  Quad2 rhs;  // mu[e open] mu[f open]
  bool holds;
  bool equality;
};

struct PncReport {
  std::vector<PncPairRow> rows;
  bool all_hold = true;
  // max over pairs of lhs/rhs (pairs with lhs > 0), as an exact fraction
  bool has_ratio = false;
  Quad2 max_ratio_num;
  Quad2 max_ratio_den;

  bool ratio_at_most(long bound) const;
};

PncReport pnc_report(const FiniteMeasure& m);
// Same verdicts computed from a tally of a uniform family (exact counts).
PncReport pnc_report_from_tally(const SubgraphTally& t);

enum class LatticeVerdict { PLC, NLC, BOTH, NEITHER };
LatticeVerdict lattice_condition(const FiniteMeasure& m);
std::string lattice_verdict_name(LatticeVerdict v);

// First/second-moment identities for Aut-invariant measures concentrated on
// k-forests or k-excess connected subgraphs of K_n, verified exactly from
// tally statistics.
struct MomentReport {
  Rational p0;
  Rational p1;
  Rational p2;
  bool p0_matches = false;        // closed form
  bool p1_identity = false;       // degree-square identity
  bool p2_identity = false;       // disjoint-pair identity
  bool p2_from_p1_identity = false;
  bool edge_transitive = false;   // all per-edge counts equal
  bool all_hold() const { return p0_matches && p1_identity && p2_identity && p2_from_p1_identity && edge_transitive; }
};

MomentReport moment_identity_check(const LabeledGraph& g, const FamilySpec& family);

// Decomposition of the pair count over components left after deleting the
// designated adjacent pair, cross-checked against closed/series routes.
struct LambdaReport {
  uint64_t lambda1 = 0;
  uint64_t lambda2 = 0;
  uint64_t lambda3 = 0;
  uint64_t lambda2_hat = 0;
  uint64_t pair_count = 0;
  bool sum_matches = false;      // pair_count == l1 + l2 + l3
  bool lambda1_identity = false; // against counts at excess k-2
  bool lambda2_identity = false; // against the mixed W' W'' series
  bool lambda3_identity = false; // against the triple W' series
  bool all_hold() const { return sum_matches && lambda1_identity && lambda2_identity && lambda3_identity; }
};

LambdaReport verify_lambda_decomposition(const WrightTable& table, int n, int k);

// Count of p-component subgraphs with prescribed group/excess structure,
// with the generating-function evaluation it must match.
struct StructuredCountReport {
  Rational brute;
  Rational series;
  bool matches = false;
};

StructuredCountReport structured_component_count(const WrightTable& table, int n,
                                                 const std::vector<std::vector<int>>& groups,
                                                 const std::vector<int>& excesses);

// Forest rank sequence b_i (#forests with i edges, i = 0..n-1) plus the
// log-concavity ladder verdicts, all decided exactly.
struct RankSequenceReport {
  std::vector<BigInt> b;
  bool unimodal = false;
  bool log_concave = false;
  bool strongly_log_concave = false;
  bool ultra_log_concave = false;
};

RankSequenceReport rank_sequence(const LabeledGraph& g, int threads = 1);

}  // namespace countlab

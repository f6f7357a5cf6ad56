#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/percolation.hpp"

#include "core/enumerate.hpp"

#include <cmath>

using namespace countlab;

namespace {

// Independent oracle for conditioned probabilities: brute enumeration of
// the complete graph with the conditioning bits forced open.
Rational brute_conditioned(int n, Conditioning c, bool isolated_instead_of_disconnect) {
  auto g = LabeledGraph::complete(n);
  auto edges = expanded_edges(g);
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
    if (isolated_instead_of_disconnect) {
      std::vector<int> deg(static_cast<size_t>(n), 0);
      for (size_t i = 0; i < edges.size(); ++i) {
        if ((mask >> i) & 1) {
          ++deg[static_cast<size_t>(edges[i].first)];
          ++deg[static_cast<size_t>(edges[i].second)];
        }
      }
      bool iso = false;
      for (int v = 0; v < n; ++v) iso |= (deg[static_cast<size_t>(v)] == 0);
      if (iso) ++hit;
    } else {
      if (classify(g, static_cast<EdgeConfig>(mask)).components != 1) ++hit;
    }
  }
  return Rational(BigInt(static_cast<unsigned long>(hit)), BigInt(static_cast<unsigned long>(all)));
}

}  // namespace

TEST_CASE("exact disconnection probabilities") {
  CHECK(exact_disconnect_probability(3, Conditioning::NONE) == Rational(1, 2));
  CHECK(exact_disconnect_probability(4, Conditioning::NONE) == Rational(13, 32));
  for (int n = 2; n <= 6; ++n) {
    CHECK(exact_disconnect_probability(n, Conditioning::NONE) == brute_conditioned(n, Conditioning::NONE, false));
  }
  // Conditioned value against a decomposition identity:
  // P[disc, e open] = P[disc] - P[disc, e closed], all over the same space.
  for (int n = 4; n <= 6; ++n) {
    const Rational p_open = exact_disconnect_probability(n, Conditioning::EDGE_OPEN);
    const Rational p = exact_disconnect_probability(n, Conditioning::NONE);
    // complementary conditioning computed by brute force
    auto g = LabeledGraph::complete(n);
    auto edges = expanded_edges(g);
    uint64_t closed_cnt = 0, closed_disc = 0;
    for (uint64_t mask = 0; mask < (1ull << edges.size()); ++mask) {
      if (mask & 1) continue;  // edge (0,1) open
      ++closed_cnt;
      if (classify(g, static_cast<EdgeConfig>(mask)).components != 1) ++closed_disc;
    }
    const Rational p_closed(BigInt(static_cast<unsigned long>(closed_disc)), BigInt(static_cast<unsigned long>(closed_cnt)));
    CHECK(p == Rational(1, 2) * p_open + Rational(1, 2) * p_closed);
  }
  // K_3 with both edges of a path forced open is always connected.
  CHECK(exact_disconnect_probability(3, Conditioning::ADJ_PAIR_OPEN) == Rational(0));
}

TEST_CASE("isolated-vertex inclusion-exclusion") {
  CHECK(isolated_ie_exact(2, Conditioning::NONE) == Rational(1, 2));
  for (int n = 4; n <= 7; ++n) {
    CHECK(isolated_ie_exact(n, Conditioning::NONE) == brute_conditioned(n, Conditioning::NONE, true));
  }
  for (int n = 5; n <= 7; ++n) {
    CHECK(isolated_ie_exact(n, Conditioning::EDGE_OPEN) == brute_conditioned(n, Conditioning::EDGE_OPEN, true));
    CHECK(isolated_ie_exact(n, Conditioning::ADJ_PAIR_OPEN) ==
          brute_conditioned(n, Conditioning::ADJ_PAIR_OPEN, true));
    CHECK(isolated_ie_exact(n, Conditioning::DISJ_PAIR_OPEN) ==
          brute_conditioned(n, Conditioning::DISJ_PAIR_OPEN, true));
  }
}

TEST_CASE("bonferroni brackets") {
  for (int n = 3; n <= 6; ++n) {
    auto rep = bonferroni_bracket(n, Conditioning::NONE);
    CHECK(rep.brackets_hold);
    CHECK(rep.tails_bounded);
    CHECK(rep.full_sum_exact);
  }
  auto rep_e = bonferroni_bracket(4, Conditioning::EDGE_OPEN);
  CHECK(rep_e.brackets_hold);
  CHECK(rep_e.tails_bounded);
  CHECK(rep_e.full_sum_exact);
  auto rep5 = bonferroni_bracket(5, Conditioning::ADJ_PAIR_OPEN);
  CHECK(rep5.brackets_hold);
  // Single eligible vertex: S_1 equals the union exactly.
  auto rep2 = bonferroni_bracket(2, Conditioning::NONE);
  CHECK(rep2.full_sum_exact);
  CHECK(rep2.partial_sums.size() == 2);
}

TEST_CASE("monte carlo reproducibility and accuracy") {
  auto a = mc_disconnect(7, Conditioning::NONE, 20000, 42);
  auto b = mc_disconnect(7, Conditioning::NONE, 20000, 42);
  CHECK(a.successes == b.successes);         // bit-for-bit for one worker
  auto c = mc_disconnect(7, Conditioning::NONE, 20000, 43);
  CHECK(a.successes != c.successes);         // the seed matters
  auto two1 = mc_disconnect(7, Conditioning::NONE, 20000, 42, 2);
  auto two2 = mc_disconnect(7, Conditioning::NONE, 20000, 42, 2);
  CHECK(two1.successes == two2.successes);   // deterministic for fixed workers

  const double exact = exact_disconnect_probability(7, Conditioning::NONE).to_double();
  const double tol = std::max(4.0 * a.stderr_value, 5e-3);
  CHECK(std::abs(a.estimate - exact) <= tol);
  CHECK(std::abs(two1.estimate - exact) <= tol);

  // Forced-open pair on K_3 never disconnects.
  auto k3 = mc_disconnect(3, Conditioning::ADJ_PAIR_OPEN, 1000, 7);
  CHECK(k3.successes == 0);
}

TEST_CASE("mc with a conditioned edge tracks the two-term law") {
  // n = 12: P[disc | e open] ~ (n-2) x_n with x_n = 2^{-11}.
  const int n = 12;
  const double xn = std::pow(0.5, n - 1);
  auto est = mc_disconnect(n, Conditioning::EDGE_OPEN, 1000000, 2024);
  const double predicted = (n - 2) * xn;
  const double tol = std::max(4.0 * est.stderr_value, 10.0 * xn * xn);
  CHECK(std::abs(est.estimate - predicted) <= tol);
}

TEST_CASE("uc counting check") {
  for (int n = 4; n <= 6; ++n) {
    auto rep = uc_pnc_counting_check(n);
    CHECK(rep.adjacent_holds);
    CHECK(rep.disjoint_holds);
    CHECK(rep.probability_form_agrees);
  }
  // |C| for K_4 is the connected-graph count.
  CHECK(uc_pnc_counting_check(4).connected == BigInt(38));
}

TEST_CASE("second-order residuals") {
  auto rows = second_order_residuals({2, 20, 30});
  REQUIRE(rows.size() == 3);
  // n = 2 is a raw data row; no assertion beyond exactness of P = 1/2.
  CHECK(rows[0].disconnect == Rational(1, 2));
  CHECK(rows[1].residual.abs() <= Rational(2));
  CHECK(rows[2].residual.abs() <= Rational(2));

  auto decomp = isolated_decomposition_row(6);
  // Difference between the exact isolated probability and its two-term law
  // is responsible for the o(1) x_n^2 correction; report both sides.
  CHECK(decomp.e1_exact > Rational(0));
  CHECK(decomp.e2_exact > Rational(0));
  CHECK((decomp.e1_exact - decomp.e1_two_term).abs() <
        Rational(1, 2).pow(2 * (6 - 1)) * Rational(10));
}

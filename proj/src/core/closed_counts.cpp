#include "closed_counts.hpp"

#include <algorithm>

namespace countlab {

namespace {

// Iterate subsets of {0..pool-1} of the given size as sorted index vectors.
template <typename F>
void for_each_combination(int pool, int size, F&& fn) {
  if (size > pool) return;
  std::vector<int> idx(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = size - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == pool - size + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < size; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j) - 1] + 1;
  }
}

}  // namespace

Rational liu_chow_count(const LabeledGraph& g, int k, int v_star) {
  const int n = g.vertex_count();
  if (k < 1 || k > n) throw std::invalid_argument("liu_chow_count: need 1 <= k <= n");
  if (!g.is_connected()) throw std::invalid_argument("liu_chow_count: graph must be connected");
  if (v_star < 0 || v_star >= n) throw std::invalid_argument("liu_chow_count: bad v_star");

  // Remaining vertices in label order, excluding v_star.
  std::vector<int> pool;
  for (int v = 0; v < n; ++v)
    if (v != v_star) pool.push_back(v);

  Rational total(0);
  for (int r = 0; r <= k - 1; ++r) {
    const int subset_size = k + r - 1;
    if (subset_size > n - 1) continue;
    Rational inner(0);
    for_each_combination(n - 1, subset_size, [&](const std::vector<int>& idx) {
      std::vector<int> S;
      S.reserve(idx.size());
      for (int i : idx) S.push_back(pool[static_cast<size_t>(i)]);
      const Rational nu = matchings_within(g, S, r);
      if (nu.is_zero()) return;
      std::vector<int> merged = S;
      merged.push_back(v_star);
      inner += nu * matrix_tree_count(g.identify_vertices(merged));
    });
    total += (r % 2) ? -inner : inner;
  }
  return total;
}

Rational kforest_count_Kn(long n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("kforest_count_Kn: need 1 <= k <= n");
  const long rmax = std::min<long>(k - 1, n - k);
  Rational sum(0);
  for (long r = 0; r <= rmax; ++r) {
    Rational term = Rational(k + r) /
                    (Rational(factorial(r)) * Rational(factorial(k - r - 1)) * Rational(factorial(n - k - r)));
    term *= Rational(1, 2).pow(r) * Rational::int_pow(BigInt(n), -r);
    sum += (r % 2) ? -term : term;
  }
  return Rational::int_pow(BigInt(n), n - k - 1) * Rational(factorial(n - 1)) * sum;
}

Rational kforest_pair_count_Kn(long n, int k) {
  if (k < 1 || n < 3) throw std::invalid_argument("kforest_pair_count_Kn: need k >= 1, n >= 3");
  const long rmax = std::min<long>(k - 1, n - k - 2);
  Rational sum(0);
  for (long r = 0; r <= rmax; ++r) {
    Rational term = Rational(k + r + 2) * Rational(factorial(n - 3)) *
                    Rational::int_pow(BigInt(n), n - k - r - 3) /
                    (Rational(2).pow(r) * Rational(factorial(r)) * Rational(factorial(k - r - 1)) *
                     Rational(factorial(n - k - r - 2)));
    sum += (r % 2) ? -term : term;
  }
  return sum;
}

KufProbabilities kuf_probabilities(long n, int k) {
  if (n < 4 || k < 1 || k > n) throw std::invalid_argument("kuf_probabilities: need n >= 4, 1 <= k <= n");
  KufProbabilities p;
  p.p0 = Rational(2 * (n - k)) / (Rational(n) * Rational(n - 1));
  const Rational count = kforest_count_Kn(n, k);
  if (count.is_zero()) throw std::domain_error("kuf_probabilities: empty family");
  p.p1 = kforest_pair_count_Kn(n, k) / count;
  p.p2 = Rational(4) *
         (Rational(n - k) * Rational(n - k - 1) - Rational(n) * Rational(n - 1) * Rational(n - 2) * p.p1) /
         (Rational(n) * Rational(n - 1) * Rational(n - 2) * Rational(n - 3));
  return p;
}

PncVerdict pnc_kuf_verdict(long n, int k) {
  if (n < 4) throw std::invalid_argument("pnc_kuf_verdict: need n >= 4");
  const auto probs = kuf_probabilities(n, k);
  PncVerdict v;
  v.n = n;
  v.k = k;
  v.p1 = probs.p1;
  const Rational n2 = Rational(n) * Rational(n);
  const Rational nm1sq = Rational(n - 1) * Rational(n - 1);
  v.bound_adjacent = Rational(4) * Rational(n - k) * Rational(n - k) / (n2 * nm1sq);
  v.bound_non_adjacent = Rational(n - k) *
                         (Rational(3) * Rational(n) * Rational(n) - Rational(5 + 4 * k) * Rational(n) + Rational(6 * k)) /
                         (n2 * nm1sq * Rational(n - 2));
  v.holds_adjacent = v.p1 <= v.bound_adjacent;
  v.holds_non_adjacent = v.p1 >= v.bound_non_adjacent;
  return v;
}

PncVerdict pnc_kuc_verdict(const WrightTable& table, int n, int k) {
  if (n < 4) throw std::invalid_argument("pnc_kuc_verdict: need n >= 4");
  if (n + k > n * (n - 1) / 2 || k < -1) throw std::invalid_argument("pnc_kuc_verdict: infeasible excess");
  Rational count, pair;
  if (k <= 0) {
    count = exact_connected_count(table, n, k);
    pair = exact_pair_count_small_excess(n, k);
  } else {
    const auto classes = enumerate_classes(LabeledGraph::complete(n));
    const auto it = classes.find({n + k, 1, false});
    if (it == classes.end()) throw std::domain_error("pnc_kuc_verdict: empty family");
    count = Rational(BigInt(static_cast<unsigned long>(it->second.count)));
    pair = Rational(BigInt(static_cast<unsigned long>(it->second.with_adj_pair)));
  }
  if (count.is_zero()) throw std::domain_error("pnc_kuc_verdict: empty family");
  PncVerdict v;
  v.n = n;
  v.k = k;
  v.p1 = pair / count;
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

ExactSeries kuf_p1_expansion(int k, int order) {
  if (k < 2) throw std::invalid_argument("kuf_p1_expansion: need k >= 2");
  if (order < 3) throw std::invalid_argument("kuf_p1_expansion: order too small");
  // In x = 1/n the two counts reduce to polynomials after stripping the
  // shared n^n factors:
  //   pair / n^{n-4} = sum_r a_r prod_{j=3}^{k+r+1} (1 - j x)
  //   count / n^{n-2} = sum_r b_r prod_{j=1}^{k+r-1} (1 - j x)
  // so p1 = x^2 A(x)/B(x).
  ExactSeries A = ExactSeries::constant(Rational(0), order);
  ExactSeries B = ExactSeries::constant(Rational(0), order);
  for (int r = 0; r <= k - 1; ++r) {
    const Rational common = Rational(1) / (Rational(2).pow(r) * Rational(factorial(r)) * Rational(factorial(k - r - 1)));
    const Rational ar = ((r % 2) ? -common : common) * Rational(k + r + 2);
    const Rational br = ((r % 2) ? -common : common) * Rational(k + r);
    ExactSeries prodA = ExactSeries::constant(ar, order);
    for (int j = 3; j <= k + r + 1; ++j) {
      ExactSeries lin = ExactSeries::constant(Rational(1), order);
      lin.set_coeff(1, Rational(-j));
      prodA = prodA * lin;
    }
    ExactSeries prodB = ExactSeries::constant(br, order);
    for (int j = 1; j <= k + r - 1; ++j) {
      ExactSeries lin = ExactSeries::constant(Rational(1), order);
      lin.set_coeff(1, Rational(-j));
      prodB = prodB * lin;
    }
    A = A + prodA;
    B = B + prodB;
  }
  ExactSeries ratio = (A * B.inverse()).shift(2).truncated(order);
  if (ratio.coeff(2) != Rational(3) || ratio.coeff(3) != Rational(-4 * (k - 1))) {
    throw invariant_error("kuf_p1_expansion: leading terms are not 3 n^-2 - 4(k-1) n^-3");
  }
  return ratio;
}

IdentityReport binomial_identity_suite(int k_max) {
  if (k_max < 1) throw std::invalid_argument("binomial_identity_suite: k_max must be >= 1");
  IdentityReport rep;
  auto require = [&rep](bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) {
      rep.all_hold = false;
      rep.failures.push_back(what);
    }
  };
  for (int k = 1; k <= k_max; ++k) {
    Rational s0(0), s1(0), s2(0), s3(0), t1(0), t2(0), t3(0);
    for (int r = 0; r <= k - 1; ++r) {
      const Rational base = Rational(1) / (Rational(2).pow(r) * Rational(factorial(r)) * Rational(factorial(k - r - 1)));
      const Rational term = (r % 2) ? -base : base;
      const Rational rr(r), kr(k + r);
      s0 += term;
      s1 += term * rr;
      s2 += term * rr * rr;
      s3 += term * rr * rr * rr;
      t1 += term * kr;
      t2 += term * kr * kr;
      t3 += term * kr * kr * kr;
    }
    const Rational lead = Rational(1) / (Rational(2).pow(k - 1) * Rational(factorial(k - 1)));
    const Rational lead2 = k >= 2 ? Rational(1) / (Rational(2).pow(k - 1) * Rational(factorial(k - 2))) : Rational(0);
    require(s0 == lead, "plain sum at k=" + std::to_string(k));
    require(s1 == -lead2, "linear sum at k=" + std::to_string(k));
    require(s2 == Rational(k - 3) * lead2, "square sum at k=" + std::to_string(k));
    require(s3 == Rational(-k * k + 8 * k - 13) * lead2, "cube sum at k=" + std::to_string(k));
    require(t1 == lead, "shifted sum at k=" + std::to_string(k));
    require(t2 == Rational(-2 * k + 3) * lead, "shifted square sum at k=" + std::to_string(k));
    require(t3 == Rational(-12 * k + 13) * lead, "shifted cube sum at k=" + std::to_string(k));
  }
  return rep;
}

BigInt connected_labeled_count(int n) {
  if (n < 1) throw std::invalid_argument("connected_labeled_count: n must be >= 1");
  static std::vector<BigInt> memo = {BigInt(0), BigInt(1)};
  while (static_cast<int>(memo.size()) <= n) {
    const int m = static_cast<int>(memo.size());
    BigInt total = big_pow(BigInt(2), static_cast<unsigned long>(m) * (m - 1) / 2);
    for (int j = 1; j <= m - 1; ++j) {
      total -= binomial(static_cast<unsigned long>(m - 1), static_cast<unsigned long>(j - 1)) * memo[static_cast<size_t>(j)] *
               big_pow(BigInt(2), static_cast<unsigned long>(m - j) * (m - j - 1) / 2);
    }
    memo.push_back(total);
  }
  return memo[static_cast<size_t>(n)];
}

}  // namespace countlab

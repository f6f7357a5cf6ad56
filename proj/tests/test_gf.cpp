#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/theta.hpp"

#include <fstream>
#include <sstream>

using namespace countlab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden_dir() {
#ifdef GOLDEN_DIR
  return GOLDEN_DIR;
#else
  return "data/golden";
#endif
}

const WrightTable& table12() {
  static WrightTable t(12);
  return t;
}

}  // namespace

TEST_CASE("tree series basics") {
  auto t = tree_series(24);
  CHECK(t.coeff(0) == Rational(0));
  CHECK(t.coeff(1) == Rational(1));
  CHECK(t.coeff(2) == Rational(1));        // 2^1/2!
  CHECK(t.coeff(3) == Rational(3, 2));     // 3^2/3!
  CHECK(t.coeff(4) == Rational(8, 3));     // 4^3/4!
  // Functional equation: z e^T - T = O(z^{N+1}).
  auto lhs = t.exp().shift(1).truncated(24) - t;
  CHECK(lhs.is_zero_through(24));
  // z (1 - T) T' = T.
  auto one = ExactSeries::constant(Rational(1), 24);
  auto check = ((one - t) * t.derivative().truncated(23)).shift(1).truncated(23) - t.truncated(23);
  CHECK(check.is_zero_through(23));
}

TEST_CASE("theta powers: closed coefficients vs series") {
  CHECK(theta_power_coeff(-1, 3) == Rational(9, 2));
  CHECK(theta_power_coeff(1, 5) == -Rational(big_pow(5L, 4), factorial(5)));
  CHECK(theta_power_coeff(0, 7) == Rational(0));
  CHECK(theta_power_coeff(0, 0) == Rational(1));
  // [z^n] theta^{-1} = n^{n-1}/(n-1)!
  for (long n = 1; n <= 12; ++n) {
    CHECK(theta_power_coeff(-1, n) == Rational::int_pow(BigInt(n), n - 1) / Rational(factorial(n - 1)));
  }
  for (int s : {-6, -3, -2, -1, 1, 2, 4}) {
    auto series = theta_power_series(s, 16);
    for (long n = 0; n <= 16; ++n) CHECK(series.coeff(static_cast<int>(n)) == theta_power_coeff(s, n));
  }
}

TEST_CASE("lagrange closed forms agree with series arithmetic") {
  CHECK(lagrange_coeff(LagrangeKind::T_POWER, 3, 5) == Rational(15, 2));
  CHECK(lagrange_coeff(LagrangeKind::T_POWER_OVER_1MT, 3, 5) == Rational(25, 2));
  CHECK(lagrange_coeff(LagrangeKind::T_POWER, 1, 1) == Rational(1));
  const int N = 30;
  auto t = tree_series(N);
  auto one = ExactSeries::constant(Rational(1), N);
  auto inv = (one - t).inverse();
  for (int k = 1; k <= N; ++k) {
    auto tk = t.pow(k);
    auto tk_over = tk * inv;
    for (long n = k; n <= N; ++n) {
      CHECK(tk.coeff(static_cast<int>(n)) == lagrange_coeff(LagrangeKind::T_POWER, k, n));
      CHECK(tk_over.coeff(static_cast<int>(n)) == lagrange_coeff(LagrangeKind::T_POWER_OVER_1MT, k, n));
    }
  }
}

TEST_CASE("ramanujan q") {
  CHECK(ramanujan_q(1) == Rational(1));
  CHECK(ramanujan_q(4) == Rational(71, 32));
  // log(1/(1-T)) coefficient route: [z^n] log theta = -Q(n) n^{n-1}/n!.
  auto logtheta = theta_power_series(1, 12).log();
  for (long n = 1; n <= 12; ++n) CHECK(logtheta.coeff(static_cast<int>(n)) == log_theta_coeff(n));
}

TEST_CASE("wright recursion reproduces the transcribed generating functions") {
  const auto& t = table12();
  const std::pair<int, std::string> files[] = {
      {-1, "wm1.json"}, {0, "w0.json"}, {1, "w1.json"}, {2, "w2.json"},
      {3, "w3.json"},   {4, "w4.json"}, {5, "w5.json"},
  };
  for (const auto& [k, name] : files) {
    const auto expected = ThetaLaurent::from_json(read_file(golden_dir() + "/wk/" + name));
    CHECK_MESSAGE(t.w(k) == expected, "W_k mismatch at k=", k);
  }
  // Support bound for every computed k.
  for (int k = 1; k <= 12; ++k) {
    CHECK(t.w(k).min_exponent() == -3 * k);
    CHECK(t.w(k).max_exponent() <= 2);
  }
}

TEST_CASE("chi triples and sigma/rho") {
  const auto& t = table12();
  auto c1 = chi_triple(t, 1);
  CHECK(c1.chi == Rational(5, 24));
  CHECK(c1.chi_tilde == Rational(-19, 24));
  CHECK(c1.chi_hat == Rational(26, 24));
  auto c2 = chi_triple(t, 2);
  CHECK(c2.chi == Rational(15, 48));
  CHECK(c2.chi_tilde == Rational(-65, 48));
  CHECK(c2.chi_hat == Rational(108, 48));
  CHECK(chi_triple(t, 3).chi == Rational(1105, 1152));
  CHECK(chi_triple(t, 4).chi == Rational(565, 128));
  CHECK(chi_triple(t, 5).chi == Rational(82825, 3072));

  CHECK(sigma_value(0) == Rational(1, 4));
  CHECK(sigma_value(1) == Rational(5, 16));
  CHECK(sigma_value(2) == Rational(15, 16));
  CHECK(sigma_value(3) == Rational(1105, 256));
  for (int k = 1; k <= 12; ++k) {
    CHECK(sigma_value(k) == Rational(3 * k, 2) * chi_triple(t, k).chi);
  }
}

TEST_CASE("derivative forms in theta") {
  const auto& t = table12();
  // z W_{-1}' = 1 - theta ; z^2 W_{-1}'' = (1 - theta)^2 / theta.
  ThetaLaurent zs_m1;
  zs_m1.set(0, Rational(1));
  zs_m1.set(1, Rational(-1));
  CHECK(t.zw_prime(-1) == zs_m1);
  ThetaLaurent z2_m1 = ThetaLaurent::one_minus_theta_pow(2) * ThetaLaurent::monomial(-1, Rational(1));
  CHECK(t.z2w_double_prime(-1) == z2_m1);
  // z W_0' = (1-theta)^3/(2 theta^2).
  ThetaLaurent zs_0 = ThetaLaurent::one_minus_theta_pow(3).scaled(Rational(1, 2)) * ThetaLaurent::monomial(-2, Rational(1));
  CHECK(t.zw_prime(0) == zs_0);
  // z^2 W_0'' = (1-theta)^3 (1+theta)(2-theta) / (2 theta^4).
  ThetaLaurent fac;
  fac.set(0, Rational(2));
  fac.set(1, Rational(1));
  fac.set(2, Rational(-1));  // (1+theta)(2-theta) = 2 + theta - theta^2
  ThetaLaurent z2_0 = ThetaLaurent::one_minus_theta_pow(3).scaled(Rational(1, 2)) * fac * ThetaLaurent::monomial(-4, Rational(1));
  CHECK(t.z2w_double_prime(0) == z2_0);
  // z W_1' = (1/24)[15 t^-5 - 53 t^-4 + 64 t^-3 - 26 t^-2 - t^-1 - 1 + 2 t].
  ThetaLaurent zs_1;
  zs_1.set(-5, Rational(15, 24));
  zs_1.set(-4, Rational(-53, 24));
  zs_1.set(-3, Rational(64, 24));
  zs_1.set(-2, Rational(-26, 24));
  zs_1.set(-1, Rational(-1, 24));
  zs_1.set(0, Rational(-1, 24));
  zs_1.set(1, Rational(2, 24));
  CHECK(t.zw_prime(1) == zs_1);

  // Leading term of z W_k' is 3k chi_k theta^{-3k-2}; of z^2 W_k'' it is
  // (9k^2+6k) chi_k theta^{-3k-4}.
  for (int k = 1; k <= 12; ++k) {
    const Rational chi = chi_triple(t, k).chi;
    CHECK(t.zw_prime(k).min_exponent() == -3 * k - 2);
    CHECK(t.zw_prime(k).coeff(-3 * k - 2) == Rational(3 * k) * chi);
    CHECK(t.z2w_double_prime(k).min_exponent() == -3 * k - 4);
    CHECK(t.z2w_double_prime(k).coeff(-3 * k - 4) == Rational(9 * k * k + 6 * k) * chi);
  }
}

TEST_CASE("exact connected counts by excess") {
  const auto& t = table12();
  CHECK(exact_connected_count(t, 4, 0) == Rational(15));
  CHECK(exact_connected_count(t, 4, 1) == Rational(6));
  CHECK(exact_connected_count(t, 5, -1) == Rational(125));
  CHECK(exact_connected_count(t, 4, 2) == Rational(1));   // only K_4 itself
  CHECK(exact_connected_count(t, 4, 3) == Rational(0));   // beyond C(4,2) edges
  CHECK(exact_connected_count(t, 1, 0) == Rational(0));
  // Laurent route and series route agree.
  for (int k = 1; k <= 5; ++k) {
    auto series = t.w(k).to_series(10);
    for (long n = 1; n <= 10; ++n) {
      CHECK(Rational(factorial(n)) * series.coeff(static_cast<int>(n)) == exact_connected_count(t, n, k));
    }
  }
  // W_0 series route exercises the log channel.
  auto w0_series = t.w(0).to_series(10);
  for (long n = 1; n <= 10; ++n) {
    CHECK(Rational(factorial(n)) * w0_series.coeff(static_cast<int>(n)) == exact_connected_count(t, n, 0));
  }
}

TEST_CASE("pair count closed routes for small excess") {
  CHECK(exact_pair_count_small_excess(4, -1) == Rational(3));
  CHECK(exact_pair_count_small_excess(5, -1) == Rational(15));
  // Unicyclic pair counts: every 4-edge spanning subgraph of K_4 is
  // connected, so the count through a fixed adjacent pair is C(4,2) = 6.
  CHECK(exact_pair_count_small_excess(4, 0) == Rational(6));
  CHECK(exact_pair_count_small_excess(3, 0) == Rational(1));
}

TEST_CASE("wright recursion agrees with the rational closed forms") {
  // Independent route: W_1 = T^4 (6 - T) / (24 (1-T)^3) and
  // W_2 = T^4 (2 + 28T - 23T^2 + 9T^3 - T^4) / (48 (1-T)^6).
  const int N = 14;
  const auto t = tree_series(N);
  const auto one = ExactSeries::constant(Rational(1), N);
  const auto inv1mt = (one - t).inverse();
  const auto w1_rational =
      (t.pow(4) * (ExactSeries::constant(Rational(6), N) - t)).scaled(Rational(1, 24)) * inv1mt.pow(3);
  const auto poly2 = ExactSeries::constant(Rational(2), N) + t.scaled(Rational(28)) -
                     t.pow(2).scaled(Rational(23)) + t.pow(3).scaled(Rational(9)) - t.pow(4);
  const auto w2_rational = (t.pow(4) * poly2).scaled(Rational(1, 48)) * inv1mt.pow(6);

  const auto& table = table12();
  const auto w1_series = table.w(1).to_series(N);
  const auto w2_series = table.w(2).to_series(N);
  for (int n = 0; n <= N; ++n) {
    CHECK(w1_series.coeff(n) == w1_rational.coeff(n));
    CHECK(w2_series.coeff(n) == w2_rational.coeff(n));
  }
}

TEST_CASE("recursion identity suite") {
  const auto& t = table12();
  auto rep = recursion_identity_suite(t, 12);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.all_hold);
  CHECK(rep.checks > 60);
}

TEST_CASE("theta laurent json round trip") {
  const auto& t = table12();
  for (int k = -1; k <= 6; ++k) {
    CHECK(ThetaLaurent::from_json(t.w(k).to_json()) == t.w(k));
  }
}

TEST_CASE("integration and division guards") {
  ThetaLaurent bad = ThetaLaurent::monomial(-1, Rational(1));
  CHECK_THROWS_AS(bad.integrate_from_theta_to_one(), invariant_error);
  ThetaLaurent odd = ThetaLaurent::monomial(0, Rational(1));
  CHECK_THROWS_AS(odd.divide_by_one_minus_theta(1), invariant_error);
  // (1-theta)^2 divides (1-theta)^2 * (theta^-3 + 5) exactly.
  ThetaLaurent poly = ThetaLaurent::monomial(-3, Rational(1)) + ThetaLaurent::monomial(0, Rational(5));
  ThetaLaurent prod = ThetaLaurent::one_minus_theta_pow(2) * poly;
  CHECK(prod.divide_by_one_minus_theta(2) == poly);
}

#pragma once

#include <map>
#include <string>
#include <vector>

#include "rational.hpp"
#include "series.hpp"

namespace countlab {

// Finite Laurent polynomial in theta = 1 - T(z) with exact rational
// coefficients, plus an optional log(theta) component (only the excess-0
// generating function carries one; the recursion itself never does).
class ThetaLaurent {
 public:
  ThetaLaurent() = default;
  explicit ThetaLaurent(Rational constant) { set(0, std::move(constant)); }

  static ThetaLaurent monomial(int exp, Rational c);
  // (1 - theta)^p for p >= 0.
  static ThetaLaurent one_minus_theta_pow(int p);

  bool is_zero() const { return coeffs_.empty() && log_coeff_.is_zero(); }
  Rational coeff(int exp) const;
  void set(int exp, Rational c);
  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  const Rational& log_coeff() const { return log_coeff_; }
  void set_log_coeff(Rational c) { log_coeff_ = std::move(c); }

  int min_exponent() const;  // throws on zero polynomial
  int max_exponent() const;

  ThetaLaurent operator-() const;
  friend ThetaLaurent operator+(const ThetaLaurent& a, const ThetaLaurent& b);
  friend ThetaLaurent operator-(const ThetaLaurent& a, const ThetaLaurent& b);
  // Product requires both factors log-free.
  friend ThetaLaurent operator*(const ThetaLaurent& a, const ThetaLaurent& b);
  friend bool operator==(const ThetaLaurent& a, const ThetaLaurent& b) {
    return a.coeffs_ == b.coeffs_ && a.log_coeff_ == b.log_coeff_;
  }
  ThetaLaurent scaled(const Rational& c) const;
  ThetaLaurent pow(int e) const;  // e >= 0, log-free

  // zf'(z) expressed back in theta; uses z theta' = -(1-theta)/theta. The
  // log component, when present, feeds in exactly and the result is log-free.
  ThetaLaurent d_operator() const;

  // Exact division by (1-theta)^k; nonzero remainder is an invariant breach.
  ThetaLaurent divide_by_one_minus_theta(int k) const;

  // Definite integral from theta to 1 treating the polynomial as a function
  // of t. A nonzero t^-1 coefficient is an invariant breach.
  ThetaLaurent integrate_from_theta_to_one() const;

  std::string to_string() const;
  std::string to_json() const;  // {"-3":"5/24",...} with optional "log"
  static ThetaLaurent from_json(const std::string& text);

  // Substitute the exact series of theta(z) to obtain z-coefficients.
  ExactSeries to_series(int order) const;

 private:
  std::map<int, Rational> coeffs_;
  Rational log_coeff_;
};

// --- Tree function and friends -------------------------------------------

// T(z) = sum n^{n-1} z^n / n!, truncated at the given order.
ExactSeries tree_series(int order);

// Exact series of theta^s = (1 - T)^s for any integer s.
ExactSeries theta_power_series(int s, int order);

// Exact [z^n] theta^s by finite binomial sums (no truncation needed).
Rational theta_power_coeff(int s, long n);

// Exact [z^n] log(theta) = -Q(n) n^{n-1}/n! for n >= 1.
Rational log_theta_coeff(long n);

// Ramanujan Q(n) as an exact rational (finite sum).
Rational ramanujan_q(long n);

// Exact [z^n] of a ThetaLaurent (log component included).
Rational theta_laurent_coeff(const ThetaLaurent& f, long n);

enum class LagrangeKind { T_POWER, T_POWER_OVER_1MT };

// Closed-form [z^n] of T^k and T^k/(1-T) for 1 <= k <= n.
Rational lagrange_coeff(LagrangeKind kind, int k, long n);

// --- Wright's recursion ----------------------------------------------------

// Generating functions W_k for connected labeled graphs by excess, expressed
// in theta. Index k >= -1; W_{-1} and W_0 are closed forms, higher k are
// produced by the differential recursion with an exact integration step.
class WrightTable {
 public:
  explicit WrightTable(int k_max);
  int k_max() const { return k_max_; }
  const ThetaLaurent& w(int k) const;        // k >= -1
  const ThetaLaurent& zw_prime(int k) const;   // z W_k'(z) in theta
  const ThetaLaurent& z2w_double_prime(int k) const;  // z^2 W_k''(z) in theta

 private:
  int k_max_;
  std::vector<ThetaLaurent> w_;        // offset by 1
  std::vector<ThetaLaurent> dw_;       // z W'
  std::vector<ThetaLaurent> d2w_;      // z^2 W''
};

struct ChiTriple {
  Rational chi;       // coefficient of theta^{-3k}
  Rational chi_tilde; // theta^{-3k+1}
  Rational chi_hat;   // theta^{-3k+2}
};

ChiTriple chi_triple(const WrightTable& table, int k);

// sigma_k by the quadratic recursion (exact), and the cross-check value
// (3k/2) chi_k they must equal for k >= 1.
Rational sigma_value(int k);

// C_{n,n+k} exactly: series/Laurent route for k >= 1, the Q(n) route for
// k = 0 (inherent in the log coefficient), Cayley for k = -1.
Rational exact_connected_count(const WrightTable& table, long n, int k);

// Exact count of excess-k connected subgraphs containing a fixed adjacent
// edge pair; closed routes exist for k = -1 (3 n^{n-4}) and k = 0.
Rational exact_pair_count_small_excess(long n, int k);

struct IdentityReport {
  bool all_hold = true;
  std::vector<std::string> failures;
  int checks = 0;
};

// Verifies the chi-recursions, the two convolution simplifications, and the
// triple-product coefficient formulas, all exactly, for 3 <= k <= k_max
// (coefficient formulas from 6 <= k).
IdentityReport recursion_identity_suite(const WrightTable& table, int k_max);

}  // namespace countlab

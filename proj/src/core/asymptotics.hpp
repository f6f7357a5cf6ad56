#pragma once

#include <string>
#include <vector>

#include "symfield.hpp"
#include "theta.hpp"

namespace countlab {

// Truncated expansion in w = sqrt(1 - e z) with Quad2 coefficients, used at
// the dominant singularity of the tree function.
class WExpansion {
 public:
  explicit WExpansion(int order) : order_(order), c_(static_cast<size_t>(order) + 1) {}
  static WExpansion tree_function();  // the pinned expansion of T, order w^5

  int order() const { return order_; }
  const Quad2& coeff(int i) const { return c_.at(static_cast<size_t>(i)); }
  void set_coeff(int i, Quad2 v) { c_.at(static_cast<size_t>(i)) = std::move(v); }

  friend WExpansion operator+(const WExpansion& a, const WExpansion& b);
  friend WExpansion operator-(const WExpansion& a, const WExpansion& b);
  friend WExpansion operator*(const WExpansion& a, const WExpansion& b);
  WExpansion scaled(const Quad2& q) const;
  WExpansion inverse() const;  // unit constant term
  WExpansion pow(long e) const;

 private:
  int order_;
  std::vector<Quad2> c_;
};

// Coefficients c_0..c_J of T^alpha (1-T)^{-beta} as a w-expansion
// c_0 w^{-beta} + c_1 w^{-beta+1} + ...; the closed forms for c_0, c_1, c_2
// are asserted against the series arithmetic.
std::vector<SymCoeff> singular_c_coeffs(int alpha, int beta, int J);

// Formal expansions in u = n^{-1/2}. Terms are indexed by the half-exponent
// p: a term (p, c) means c * e^n n^{p/2} at coefficient level, or
// c * n^{n + p/2} at count level. error_p is the half-exponent of the O()
// term (kExactExpansion when there is none).
enum class Prefactor { COEFF_LEVEL, COUNT_LEVEL };
inline constexpr int kExactExpansion = -1000000;

struct AsymExpansion {
  Prefactor level = Prefactor::COEFF_LEVEL;
  std::vector<std::pair<int, SymCoeff>> terms;  // strictly decreasing p
  int error_p = kExactExpansion;

  int lead_p() const;
  SymCoeff coeff(int p) const;
  AsymExpansion truncated(int max_terms) const;
  std::string to_string() const;
};

AsymExpansion asym_add(const AsymExpansion& a, const AsymExpansion& b);
AsymExpansion asym_scale(const AsymExpansion& a, const SymCoeff& c);

// Multiplicative series in u (exponents lead, lead+1, ...).
struct RatioSeries {
  int lead = 0;
  std::vector<SymCoeff> c;
  int error_exp = kExactExpansion;  // O(u^{error_exp})

  SymCoeff coeff(int exp) const;
  std::string to_string() const;
};

AsymExpansion asym_mul_series(const AsymExpansion& a, const RatioSeries& s);
RatioSeries asym_divide(const AsymExpansion& num, const AsymExpansion& den);

// Three-term transfer of a log-free theta-Laurent polynomial to coefficient
// asymptotics, using the half-integer gamma conventions.
AsymExpansion theta_transfer(const ThetaLaurent& f, int terms = 3);

// Multiplicative Stirling corrections: n! and (n-3)! relative to
// sqrt(2 pi) e^{-n} n^{n+1/2} and sqrt(2 pi) e^{-n} n^{n-5/2}, to J terms in
// 1/n (so 2J terms in u).
RatioSeries stirling_correction(int J);
RatioSeries stirling_correction_nm3(int J);

// Leading asymptotic constant rho_k with the count ~ rho_k n^{n+(3k-1)/2}.
SymCoeff rho_value(int k);

// (sigma_k, rho_k) together; cross-asserts sigma_k = (3k/2) chi_k against
// the recursion table for k >= 1.
std::pair<Rational, SymCoeff> sigma_rho(const WrightTable& table, int k);

// Three-term expansion of the excess-k connected count (count level).
AsymExpansion cnnk_expansion(const WrightTable& table, int k);

// Three-term expansion of the adjacent-pair count. For 1 <= k <= 5 the full
// theta-Laurent pipeline is used; for k >= 6 the structural coefficient
// formulas; at k = 6, 7 both routes are computed and compared.
AsymExpansion cnnkef_expansion(const WrightTable& table, int k);

struct LeadingOrderReport {
  bool r3_matches = false;       // R3 lead == 3 rho_k
  bool r2_matches = false;       // R2 lead == 3 rho_{k-1}
  bool pair_matches = false;     // pair-count lead == 3 rho_k
  bool all_hold() const { return r3_matches && r2_matches && pair_matches; }
};

LeadingOrderReport leading_order_checks(const WrightTable& table, int k);

// p1 = pair/count as a series in u; asserts 3 u^4 + 0 u^5 + 9(k+1) u^6 and,
// for k >= 6, the three structural coefficient identities.
RatioSeries p1_ratio(const WrightTable& table, int k);

struct AsymptoticPncReport {
  Rational margin_n2;  // adjacent-bound margin at n^-2
  Rational margin_n3;  // non-adjacent margin at n^-3
  bool holds = false;
};

AsymptoticPncReport pnc_asymptotic_verdict(const WrightTable& table, int k);

struct ConvergenceRow {
  long n;
  std::string exact;      // decimal string
  std::string expansion;  // decimal string
  double rel_error;
  double scaled_residual;  // rel_error * n^{3/2}
};

std::vector<ConvergenceRow> convergence_report(const WrightTable& table, int k, const std::vector<long>& ns);

}  // namespace countlab

#include "asymptotics.hpp"

#include <algorithm>
#include <sstream>

namespace countlab {

// ---------------------------------------------------------------------------
// WExpansion

WExpansion WExpansion::tree_function() {
  WExpansion t(5);
  const Quad2 r2 = Quad2::sqrt2();
  t.set_coeff(0, Quad2(1));
  t.set_coeff(1, -r2);
  t.set_coeff(2, Quad2(Rational(2, 3)));
  t.set_coeff(3, r2 * Quad2(Rational(-11, 36)));
  t.set_coeff(4, Quad2(Rational(43, 135)));
  t.set_coeff(5, r2 * Quad2(Rational(-769, 4320)));
  return t;
}

WExpansion operator+(const WExpansion& a, const WExpansion& b) {
  WExpansion r(std::min(a.order_, b.order_));
  for (int i = 0; i <= r.order_; ++i) r.c_[static_cast<size_t>(i)] = a.coeff(i) + b.coeff(i);
  return r;
}

WExpansion operator-(const WExpansion& a, const WExpansion& b) {
  WExpansion r(std::min(a.order_, b.order_));
  for (int i = 0; i <= r.order_; ++i) r.c_[static_cast<size_t>(i)] = a.coeff(i) - b.coeff(i);
  return r;
}

WExpansion operator*(const WExpansion& a, const WExpansion& b) {
  WExpansion r(std::min(a.order_, b.order_));
  for (int i = 0; i <= std::min(a.order_, r.order_); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (int j = 0; j <= std::min(b.order_, r.order_ - i); ++j) {
      r.c_[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    }
  }
  return r;
}

WExpansion WExpansion::scaled(const Quad2& q) const {
  WExpansion r = *this;
  for (auto& x : r.c_) x *= q;
  return r;
}

WExpansion WExpansion::inverse() const {
  if (c_[0].is_zero()) throw std::domain_error("WExpansion::inverse: zero constant term");
  WExpansion r(order_);
  const Quad2 inv0 = c_[0].inv();
  r.c_[0] = inv0;
  for (int n = 1; n <= order_; ++n) {
    Quad2 acc(0);
    for (int k = 1; k <= n; ++k) acc += c_[static_cast<size_t>(k)] * r.c_[static_cast<size_t>(n - k)];
    r.c_[static_cast<size_t>(n)] = -(inv0 * acc);
  }
  return r;
}

WExpansion WExpansion::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  WExpansion r(order_);
  r.c_[0] = Quad2(1);
  WExpansion base = *this;
  unsigned long ue = static_cast<unsigned long>(e);
  while (ue) {
    if (ue & 1) r = r * base;
    base = base * base;
    ue >>= 1;
  }
  return r;
}

std::vector<SymCoeff> singular_c_coeffs(int alpha, int beta, int J) {
  if (alpha < 0 || beta < 2) throw std::invalid_argument("singular_c_coeffs: need alpha >= 0, beta >= 2");
  const WExpansion t = WExpansion::tree_function();
  if (J > t.order() - 1) throw std::invalid_argument("singular_c_coeffs: order beyond the pinned expansion");
  // 1 - T = sqrt2 w * unit(w); so T^alpha (1-T)^-beta = 2^{-beta/2} w^{-beta}
  // T^alpha unit^{-beta}.
  if (!(Quad2(1) - t.coeff(0)).is_zero()) throw invariant_error("singular_c_coeffs: T(w=0) != 1");
  WExpansion shifted(t.order() - 1);  // (1 - T)/w: coefficient i multiplies w^i
  for (int i = 0; i <= shifted.order(); ++i) shifted.set_coeff(i, -t.coeff(i + 1));
  WExpansion unit = shifted.scaled(Quad2::sqrt2().inv());
  WExpansion series = t.pow(alpha) * unit.pow(-static_cast<long>(beta));
  std::vector<SymCoeff> out;
  const Quad2 pref = Quad2::pow2_half(-beta);
  for (int i = 0; i <= J; ++i) out.push_back(SymCoeff(pref * series.coeff(i)));

  // Closed forms for the first three coefficients. The w^2 coefficient of
  // T^alpha is alpha^2 - alpha/3, which gives the -12 alpha contribution.
  const Quad2 r2 = Quad2::sqrt2();
  const Quad2 c0 = pref;
  const Quad2 c1 = pref * r2 * Quad2(Rational(beta, 3) - Rational(alpha));
  const Quad2 c2 = pref * Quad2(Rational(36L * alpha * alpha - 12L * alpha + 4L * beta * beta - 7L * beta -
                                              24L * alpha * beta,
                                          36));
  if (out.size() > 0 && out[0] != SymCoeff(c0)) throw invariant_error("singular_c_coeffs: c0 mismatch");
  if (out.size() > 1 && out[1] != SymCoeff(c1)) throw invariant_error("singular_c_coeffs: c1 mismatch");
  if (out.size() > 2 && out[2] != SymCoeff(c2)) throw invariant_error("singular_c_coeffs: c2 mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// AsymExpansion plumbing

int AsymExpansion::lead_p() const {
  if (terms.empty()) throw std::domain_error("AsymExpansion: no terms");
  return terms.front().first;
}

SymCoeff AsymExpansion::coeff(int p) const {
  for (const auto& [tp, c] : terms)
    if (tp == p) return c;
  return SymCoeff(0);
}

AsymExpansion AsymExpansion::truncated(int max_terms) const {
  AsymExpansion r = *this;
  if (static_cast<int>(r.terms.size()) > max_terms) {
    const int new_error = r.terms[static_cast<size_t>(max_terms)].first;
    r.terms.resize(static_cast<size_t>(max_terms));
    r.error_p = std::max(r.error_p, new_error);
  }
  return r;
}

namespace {

std::string half_exponent(int p) {
  if (p % 2 == 0) return std::to_string(p / 2);
  return std::to_string(p) + "/2";
}

}  // namespace

std::string AsymExpansion::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : terms) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.display() << ")";
    if (level == Prefactor::COUNT_LEVEL) {
      out << "*n^(n" << (p >= 0 ? "+" : "") << half_exponent(p) << ")";
    } else {
      out << "*e^n*n^(" << half_exponent(p) << ")";
    }
  }
  if (error_p != kExactExpansion) {
    out << " + O(n^(";
    if (level == Prefactor::COUNT_LEVEL) out << "n" << (error_p >= 0 ? "+" : "");
    out << half_exponent(error_p) << "))";
  }
  return out.str();
}

namespace {

void normalize_terms(AsymExpansion& a) {
  std::sort(a.terms.begin(), a.terms.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<std::pair<int, SymCoeff>> merged;
  for (auto& [p, c] : a.terms) {
    if (!merged.empty() && merged.back().first == p) {
      merged.back().second += c;
    } else {
      merged.push_back({p, c});
    }
  }
  a.terms.clear();
  for (auto& [p, c] : merged) {
    if (p <= a.error_p) continue;  // absorbed by the error term
    if (!c.is_zero()) a.terms.push_back({p, c});
  }
}

}  // namespace

AsymExpansion asym_add(const AsymExpansion& a, const AsymExpansion& b) {
  if (a.level != b.level) throw std::invalid_argument("asym_add: mismatched prefactor level");
  AsymExpansion r;
  r.level = a.level;
  r.error_p = std::max(a.error_p, b.error_p);
  r.terms = a.terms;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  normalize_terms(r);
  return r;
}

AsymExpansion asym_scale(const AsymExpansion& a, const SymCoeff& c) {
  AsymExpansion r = a;
  for (auto& [p, x] : r.terms) x *= c;
  normalize_terms(r);
  return r;
}

SymCoeff RatioSeries::coeff(int exp) const {
  const int idx = exp - lead;
  if (idx < 0 || idx >= static_cast<int>(c.size())) return SymCoeff(0);
  return c[static_cast<size_t>(idx)];
}

std::string RatioSeries::to_string() const {
  std::ostringstream out;
  auto neg_half = [](int e) {
    if (e % 2 == 0) return std::string("-") + std::to_string(e / 2);
    return std::string("-") + std::to_string(e) + "/2";
  };
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    const int e = lead + static_cast<int>(i);
    out << "(" << c[i].display() << ")";
    if (e != 0) out << "*n^(" << neg_half(e) << ")";
  }
  if (first) out << "0";
  if (error_exp != kExactExpansion) out << " + O(n^(" << neg_half(error_exp) << "))";
  return out.str();
}

AsymExpansion asym_mul_series(const AsymExpansion& a, const RatioSeries& s) {
  AsymExpansion r;
  r.level = a.level;
  r.error_p = kExactExpansion;
  if (a.error_p != kExactExpansion) r.error_p = a.error_p - s.lead;
  if (s.error_exp != kExactExpansion && !a.terms.empty())
    r.error_p = std::max(r.error_p, a.lead_p() - s.error_exp);
  for (const auto& [p, c] : a.terms) {
    for (size_t i = 0; i < s.c.size(); ++i) {
      if (s.c[i].is_zero()) continue;
      r.terms.push_back({p - (s.lead + static_cast<int>(i)), c * s.c[i]});
    }
  }
  normalize_terms(r);
  return r;
}

RatioSeries asym_divide(const AsymExpansion& num, const AsymExpansion& den) {
  if (num.level != den.level) throw std::invalid_argument("asym_divide: mismatched prefactor level");
  if (den.terms.empty() || den.terms.front().second.is_zero())
    throw std::domain_error("asym_divide: zero leading coefficient");
  if (num.terms.empty()) throw std::domain_error("asym_divide: empty numerator");
  const int np = num.lead_p();
  const int dp = den.lead_p();
  // Relative orders available from each side.
  const int num_rel = num.error_p == kExactExpansion ? 1000 : np - num.error_p;
  const int den_rel = den.error_p == kExactExpansion ? 1000 : dp - den.error_p;
  const int rel = std::min(num_rel, den_rel);
  if (rel > 500) throw std::invalid_argument("asym_divide: both sides exact; use exact arithmetic instead");

  std::vector<SymCoeff> a(static_cast<size_t>(rel)), b(static_cast<size_t>(rel));
  for (int i = 0; i < rel; ++i) {
    a[static_cast<size_t>(i)] = num.coeff(np - i);
    b[static_cast<size_t>(i)] = den.coeff(dp - i);
  }
  RatioSeries q;
  q.lead = dp - np;
  q.error_exp = q.lead + rel;
  q.c.resize(static_cast<size_t>(rel));
  const SymCoeff inv0 = b[0].inv();
  for (int i = 0; i < rel; ++i) {
    SymCoeff acc = a[static_cast<size_t>(i)];
    for (int j = 0; j < i; ++j) acc -= q.c[static_cast<size_t>(j)] * b[static_cast<size_t>(i - j)];
    q.c[static_cast<size_t>(i)] = acc * inv0;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Transfer and Stirling

AsymExpansion theta_transfer(const ThetaLaurent& f, int terms) {
  if (terms != 3) throw std::invalid_argument("theta_transfer: pinned to three terms");
  if (!f.log_coeff().is_zero()) throw std::invalid_argument("theta_transfer: log component not transferable");
  if (f.is_zero()) throw std::invalid_argument("theta_transfer: zero polynomial");
  const int m = -f.min_exponent();
  if (m < 1) throw std::invalid_argument("theta_transfer: need a negative leading exponent");
  const SymCoeff f0{f.coeff(-m)};
  const SymCoeff f1{f.coeff(-m + 1)};
  const SymCoeff f2{f.coeff(-m + 2)};
  const SymCoeff r2{Quad2::sqrt2()};
  const SymCoeff inv_g0 = gamma_half(m).reciprocal();
  const SymCoeff inv_g1 = gamma_half(m - 1).reciprocal();
  const SymCoeff inv_g2 = gamma_half(m - 2).reciprocal();
  const SymCoeff p0{Quad2::pow2_half(-m)};
  const SymCoeff p1{Quad2::pow2_half(-m + 1)};
  const SymCoeff p2{Quad2::pow2_half(-m + 2)};

  const SymCoeff c0 = f0 * p0 * inv_g0;
  const SymCoeff g1 = f0 * p0 * r2 * SymCoeff(Rational(m, 3)) * inv_g1 + f1 * p1 * inv_g1;
  const SymCoeff g2 = f0 * p0 * SymCoeff(Rational(2L * m * m + m, 18)) * inv_g2 +
                      f1 * p1 * r2 * SymCoeff(Rational(m - 1, 3)) * inv_g2 + f2 * p2 * inv_g2;

  AsymExpansion r;
  r.level = Prefactor::COEFF_LEVEL;
  r.terms = {{m - 2, c0}, {m - 3, g1}, {m - 4, g2}};
  r.error_p = m - 5;
  normalize_terms(r);
  return r;
}

namespace {

Rational bernoulli_number(int n) {
  static std::vector<Rational> memo = {Rational(1)};
  while (static_cast<int>(memo.size()) <= n) {
    const int m = static_cast<int>(memo.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc(0);
    for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * memo[static_cast<size_t>(j)];
    memo.push_back(-acc / Rational(m + 1));
  }
  return memo[static_cast<size_t>(n)];
}

// exp of the Stirling log-series in x = 1/n, to J coefficients past 1.
ExactSeries stirling_exp_series(int J) {
  ExactSeries logs = ExactSeries::constant(Rational(0), J);
  for (int m = 1; 2 * m - 1 <= J; ++m) {
    logs.set_coeff(2 * m - 1, bernoulli_number(2 * m) / Rational(2 * m * (2 * m - 1)));
  }
  return logs.exp();
}

RatioSeries to_u_series(const ExactSeries& x_series, int J) {
  RatioSeries s;
  s.lead = 0;
  s.c.assign(static_cast<size_t>(2 * J) + 1, SymCoeff(0));
  for (int i = 0; i <= J; ++i) s.c[static_cast<size_t>(2 * i)] = SymCoeff(x_series.coeff(i));
  s.error_exp = 2 * J + 1;
  return s;
}

}  // namespace

RatioSeries stirling_correction(int J) {
  if (J < 0) throw std::invalid_argument("stirling_correction: negative order");
  return to_u_series(stirling_exp_series(J), J);
}

RatioSeries stirling_correction_nm3(int J) {
  // (n-3)! = n! / (n(n-1)(n-2)): the extra factor is
  // 1/((1-1/n)(1-2/n)) = sum_m (2^{m+1}-1) x^m.
  ExactSeries base = stirling_exp_series(J);
  ExactSeries geom = ExactSeries::constant(Rational(0), J);
  for (int m = 0; m <= J; ++m) {
    const BigInt factor = big_pow(BigInt(2), static_cast<unsigned long>(m) + 1) - BigInt(1);
    geom.set_coeff(m, Rational(factor));
  }
  return to_u_series(base * geom, J);
}

namespace {

// COEFF_LEVEL -> COUNT_LEVEL via n! or (n-3)!: multiply by sqrt(2 pi), shift
// the half-exponent, and apply the Stirling correction series.
AsymExpansion to_count_level(const AsymExpansion& coeff_level, bool via_nm3) {
  if (coeff_level.level != Prefactor::COEFF_LEVEL) throw std::invalid_argument("to_count_level: wrong level");
  AsymExpansion shifted = coeff_level;
  shifted.level = Prefactor::COUNT_LEVEL;
  const int delta = via_nm3 ? -5 : 1;
  for (auto& [p, c] : shifted.terms) {
    p += delta;
    c *= SymCoeff::sym();
  }
  if (shifted.error_p != kExactExpansion) shifted.error_p += delta;
  return asym_mul_series(shifted, via_nm3 ? stirling_correction_nm3(3) : stirling_correction(3));
}

RatioSeries lambda1_prefactor(int k, int terms) {
  // 1 - 4(n+k-2)/(n(n-1)) = 1 - 4u^2 - 4(k-1)(u^4 + u^6 + ...)
  RatioSeries s;
  s.lead = 0;
  s.c.assign(static_cast<size_t>(2 * terms) + 1, SymCoeff(0));
  s.c[0] = SymCoeff(1);
  if (terms >= 1) s.c[2] = SymCoeff(Rational(-4));
  for (int i = 2; i <= terms; ++i) s.c[static_cast<size_t>(2 * i)] = SymCoeff(Rational(-4 * (k - 1)));
  s.error_exp = 2 * terms + 1;
  return s;
}

}  // namespace

SymCoeff rho_value(int k) {
  if (k < -1) throw std::invalid_argument("rho_value: k must be >= -1");
  if (k == -1) return SymCoeff(1);
  const SymCoeff sqrt_pi = SymCoeff::sqrt_pi();
  const SymCoeff pw{Quad2::pow2_half(1 - 3 * k)};
  return sqrt_pi * pw * SymCoeff(sigma_value(k)) * gamma_half(3 * k + 2).reciprocal();
}

std::pair<Rational, SymCoeff> sigma_rho(const WrightTable& table, int k) {
  if (k < 0) throw std::invalid_argument("sigma_rho: k must be >= 0");
  const Rational sigma = sigma_value(k);
  if (k >= 1) {
    if (k > table.k_max()) throw std::invalid_argument("sigma_rho: table too small");
    if (sigma != Rational(3 * k, 2) * chi_triple(table, k).chi)
      throw invariant_error("sigma_rho: sigma and the leading Laurent coefficient disagree at k=" + std::to_string(k));
  }
  return {sigma, rho_value(k)};
}

AsymExpansion cnnk_expansion(const WrightTable& table, int k) {
  if (k < -1) throw std::invalid_argument("cnnk_expansion: k must be >= -1");
  AsymExpansion r;
  r.level = Prefactor::COUNT_LEVEL;
  if (k == -1) {
    r.terms = {{-4, SymCoeff(1)}};
    r.error_p = kExactExpansion;
    return r;
  }
  if (k == 0) {
    // (1/2) Q(n) n^{n-1} - n^{n-1} + (1/2) n^{n-2} with the pinned Q series
    // Q(n) = (s/2) n^{1/2} - 1/3 + (s/24) n^{-1/2} - (4/135) n^{-1} + O(n^{-3/2}).
    const SymCoeff s = SymCoeff::sym();
    AsymExpansion q_part;
    q_part.level = Prefactor::COUNT_LEVEL;
    q_part.terms = {{-1, s * SymCoeff(Rational(1, 4))},
                    {-2, SymCoeff(Rational(-1, 6))},
                    {-3, s * SymCoeff(Rational(1, 48))},
                    {-4, SymCoeff(Rational(-2, 135))}};
    q_part.error_p = -5;
    AsymExpansion rest;
    rest.level = Prefactor::COUNT_LEVEL;
    rest.terms = {{-2, SymCoeff(Rational(-1))}, {-4, SymCoeff(Rational(1, 2))}};
    rest.error_p = kExactExpansion;
    return asym_add(q_part, rest).truncated(3);
  }
  return to_count_level(theta_transfer(table.w(k)), false).truncated(3);
}

namespace {

ThetaLaurent triple_product(const WrightTable& table, int k) {
  ThetaLaurent triple;
  for (int k1 = -1; k1 <= k; ++k1)
    for (int k2 = -1; k2 <= k - 1 - k1; ++k2) {
      const int k3 = k - 2 - k1 - k2;
      triple = triple + table.zw_prime(k1) * table.zw_prime(k2) * table.zw_prime(k3);
    }
  return triple;
}

ThetaLaurent mixed_product(const WrightTable& table, int k) {
  ThetaLaurent mixed;
  for (int l = -1; l <= k - 1; ++l) mixed = mixed + table.zw_prime(l) * table.z2w_double_prime(k - 2 - l);
  return mixed;
}

AsymExpansion r3_expansion(const WrightTable& table, int k) {
  return to_count_level(theta_transfer(triple_product(table, k)), true);
}

AsymExpansion r2_expansion(const WrightTable& table, int k) {
  return asym_scale(to_count_level(theta_transfer(mixed_product(table, k)), true), SymCoeff(Rational(3)));
}

AsymExpansion cnnkef_laurent_route(const WrightTable& table, int k) {
  AsymExpansion total = asym_add(r3_expansion(table, k), r2_expansion(table, k));
  total = asym_add(total, asym_mul_series(cnnk_expansion(table, k - 2), lambda1_prefactor(k, 3)));
  // Dropped pieces: the pair count two excesses down is O(n^{n+(3k-11)/2});
  // the bridge-pair correction is O(n^{n+(3k-8)/2}).
  total.error_p = std::max(total.error_p, 3 * k - 8);
  AsymExpansion r = total.truncated(3);
  return r;
}

// s * 2^{-m/2} / Gamma(m/2) * v, the recurring block of the refined displays.
SymCoeff gamma_block(int m, const Rational& v) {
  return SymCoeff::sym() * SymCoeff(PolyS(Quad2::pow2_half(-m)), PolyS(1)) * gamma_half(m).reciprocal() * SymCoeff(v);
}

// Closed three-coefficient display of the count expansion for k >= 1:
// C = sqrt(2 pi) n^{n+(3k-1)/2} (b0 + b1 u + b2 u^2 + O(u^3)).
std::array<SymCoeff, 3> count_display_coeffs(const WrightTable& table, int k) {
  const auto ck = chi_triple(table, k);
  const SymCoeff b0 = gamma_block(3 * k, ck.chi);
  const SymCoeff b1 = gamma_block(3 * k - 1, Rational(k) * ck.chi + ck.chi_tilde);
  const SymCoeff b2 = gamma_block(3 * k - 2, Rational(static_cast<long>(k) * (6 * k + 1), 12) * ck.chi +
                                                 Rational(3 * k - 1, 3) * ck.chi_tilde + ck.chi_hat) +
                      gamma_block(3 * k, Rational(1, 12) * ck.chi);
  return {b0, b1, b2};
}

// Closed three-coefficient display of the pair-count expansion for k >= 3:
// C^pair = sqrt(2 pi) n^{n+(3k-5)/2} (a0 + a1 u + a2 u^2 + O(u^3)).
std::array<SymCoeff, 3> pair_display_coeffs(const WrightTable& table, int k) {
  const auto ck = chi_triple(table, k);
  const SymCoeff a0 = gamma_block(3 * k + 2, Rational(9 * k) * ck.chi);
  const SymCoeff a1 = gamma_block(3 * k + 1, Rational(3 * (3 * k - 1)) * (Rational(k) * ck.chi + ck.chi_tilde));
  const SymCoeff a2 = gamma_block(3 * k, Rational(9 * k - 6) * ck.chi_hat +
                                             Rational(9 * k * k - 9 * k + 2) * ck.chi_tilde +
                                             Rational(18 * k * k * k - 9 * k * k + 34 * k + 37) * ck.chi / Rational(4));
  return {a0, a1, a2};
}

AsymExpansion cnnkef_structural_route(const WrightTable& table, int k) {
  const auto ck = chi_triple(table, k);
  const auto ck1 = chi_triple(table, k - 1);
  const auto ck2 = chi_triple(table, k - 2);
  auto block = gamma_block;
  // Pair-count display
  const auto [a0, a1, a2] = pair_display_coeffs(table, k);
  AsymExpansion direct;
  direct.level = Prefactor::COUNT_LEVEL;
  direct.terms = {{3 * k - 5, a0}, {3 * k - 6, a1}, {3 * k - 7, a2}};
  direct.error_p = 3 * k - 8;
  normalize_terms(direct);

  // The same display must arise as R1 + R2 + R3 from the refined structural
  // expansions; the chi_{k-1}, chi-tilde_{k-1} and chi_{k-2} blocks cancel.
  const SymCoeff r3_0 = block(3 * k + 2, Rational(9 * k) * ck.chi);
  const SymCoeff r3_1 = block(3 * k + 1, Rational(3 * (3 * k - 1)) *
                                             (ck.chi_tilde + Rational(k) * ck.chi - Rational(3 * (k - 1)) * ck1.chi));
  const SymCoeff r3_2 =
      block(3 * k, Rational(3 * (3 * k - 2)) * ck.chi_hat + Rational((3 * k - 1) * (3 * k - 2)) * ck.chi_tilde -
                       Rational(3 * (3 * k - 4) * (3 * k - 2)) * ck1.chi_tilde -
                       Rational(3 * (k - 1) * (3 * k - 4)) * Rational(3 * k - 2) * ck1.chi +
                       Rational(3, 2) * Rational((k - 2) * (3 * k - 4)) * Rational(3 * k - 2) * ck2.chi +
                       Rational(18 * k * k * k - 9 * k * k + 34 * k + 37) * ck.chi / Rational(4));
  const SymCoeff r2_0 = SymCoeff(Rational(3)) * block(3 * k + 1, Rational(3 * (k - 1) * (3 * k - 1)) * ck1.chi);
  const SymCoeff r2_1 = SymCoeff(Rational(3)) *
                        block(3 * k, Rational((3 * k - 4) * (3 * k - 2)) *
                                         (Rational(k - 1) * ck1.chi + ck1.chi_tilde - Rational(3, 2) * Rational(k - 2) * ck2.chi));
  const SymCoeff r1_0 = block(3 * k, Rational(3 * k - 6) * Rational(3 * k - 4) * Rational(3 * k - 2) * ck2.chi);
  if (a0 != r3_0 || a1 != r3_1 + r2_0 || a2 != r3_2 + r2_1 + r1_0) {
    throw invariant_error("cnnkef_structural_route: R1+R2+R3 does not match the pair-count display at k=" +
                          std::to_string(k));
  }
  return direct;
}

}  // namespace

AsymExpansion cnnkef_expansion(const WrightTable& table, int k) {
  if (k < -1) throw std::invalid_argument("cnnkef_expansion: k must be >= -1");
  AsymExpansion r;
  r.level = Prefactor::COUNT_LEVEL;
  if (k == -1) {
    r.terms = {{-8, SymCoeff(3)}};
    r.error_p = kExactExpansion;
    return r;
  }
  if (k == 0) {
    // I1 + 2 I2 + 3 I3 with I1, I2 exact and I3 through the transfer.
    const ThetaLaurent t5 = ThetaLaurent::one_minus_theta_pow(5) * ThetaLaurent::monomial(-2, Rational(1));
    AsymExpansion i3 = asym_scale(to_count_level(theta_transfer(t5), true), SymCoeff(Rational(3, 2)));
    AsymExpansion exact_part;
    exact_part.level = Prefactor::COUNT_LEVEL;
    exact_part.terms = {{-6, SymCoeff(3)}, {-8, SymCoeff(-6)}};
    exact_part.error_p = kExactExpansion;
    return asym_add(i3, exact_part).truncated(3);
  }
  if (k <= 5) return cnnkef_laurent_route(table, k);
  AsymExpansion structural = cnnkef_structural_route(table, k);
  if (k <= 7) {
    // Seam check: both pipelines agree where they overlap.
    AsymExpansion laurent = cnnkef_laurent_route(table, k);
    if (laurent.terms != structural.terms) {
      throw invariant_error("cnnkef_expansion: laurent and structural routes disagree at k=" + std::to_string(k));
    }
  }
  return structural;
}

LeadingOrderReport leading_order_checks(const WrightTable& table, int k) {
  if (k < 1) throw std::invalid_argument("leading_order_checks: k must be >= 1");
  LeadingOrderReport rep;
  const SymCoeff three_rho_k = SymCoeff(Rational(3)) * rho_value(k);
  const SymCoeff three_rho_km1 = SymCoeff(Rational(3)) * rho_value(k - 1);
  const AsymExpansion r3 = r3_expansion(table, k);
  rep.r3_matches = r3.lead_p() == 3 * k - 5 && r3.terms.front().second == three_rho_k;
  const AsymExpansion r2 = r2_expansion(table, k);
  rep.r2_matches = r2.lead_p() == 3 * k - 6 && r2.terms.front().second == three_rho_km1;
  const AsymExpansion pair = cnnkef_expansion(table, k);
  rep.pair_matches = pair.lead_p() == 3 * k - 5 && pair.terms.front().second == three_rho_k;
  return rep;
}

RatioSeries p1_ratio(const WrightTable& table, int k) {
  if (k < 0) throw std::invalid_argument("p1_ratio: k must be >= 0");
  const AsymExpansion count = cnnk_expansion(table, k);
  const RatioSeries ratio = asym_divide(cnnkef_expansion(table, k), count);
  if (ratio.lead != 4) throw invariant_error("p1_ratio: ratio does not start at u^4");
  if (ratio.coeff(4) != SymCoeff(3) || !ratio.coeff(5).is_zero() ||
      ratio.coeff(6) != SymCoeff(Rational(9 * (k + 1)))) {
    throw invariant_error("p1_ratio: coefficients differ from 3 u^4 + 9(k+1) u^6 at k=" + std::to_string(k));
  }
  if (k >= 6) {
    // The three structural coefficient identities, asserted literally, plus
    // the closed count display against the transfer pipeline.
    const auto [a0, a1, a2] = pair_display_coeffs(table, k);
    const auto [b0, b1, b2] = count_display_coeffs(table, k);
    for (int i = 0; i < 3; ++i) {
      const SymCoeff& b = i == 0 ? b0 : (i == 1 ? b1 : b2);
      if (count.coeff(3 * k - 1 - i) != b)
        throw invariant_error("p1_ratio: count display mismatch at k=" + std::to_string(k));
    }
    if (a0 != SymCoeff(3) * b0 || a1 != SymCoeff(3) * b1 ||
        a2 - SymCoeff(3) * b2 != SymCoeff(Rational(9 * k + 9)) * b0) {
      throw invariant_error("p1_ratio: structural coefficient identities fail at k=" + std::to_string(k));
    }
  }
  return ratio;
}

AsymptoticPncReport pnc_asymptotic_verdict(const WrightTable& table, int k) {
  const RatioSeries ratio = p1_ratio(table, k);
  AsymptoticPncReport rep;
  Rational c4, c6;
  if (!ratio.coeff(4).is_rational(&c4) || !ratio.coeff(6).is_rational(&c6))
    throw invariant_error("pnc_asymptotic_verdict: non-rational ratio coefficients");
  rep.margin_n2 = Rational(4) - c4;                       // adjacent bound 4/n^2 + ...
  rep.margin_n3 = c6 - Rational(7 * (k + 1));             // non-adjacent bound ... + 7(k+1)/n^3
  rep.holds = rep.margin_n2 > Rational(0) && c4 == Rational(3) && rep.margin_n3 > Rational(0) &&
              ratio.coeff(5).is_zero();
  return rep;
}

std::vector<ConvergenceRow> convergence_report(const WrightTable& table, int k, const std::vector<long>& ns) {
  constexpr unsigned kPrec = 512;
  const AsymExpansion exp3 = cnnk_expansion(table, k).truncated(3);
  std::vector<ConvergenceRow> rows;
  for (long n : ns) {
    const Rational exact = exact_connected_count(table, n, k);
    // Evaluate sum c_i n^{n + p_i/2} with high-precision floats:
    // n^{n + p/2} = sqrt(n)^{2n + p}.
    mpf_class sqrt_n(0, kPrec);
    {
      mpf_class nn(n, kPrec);
      mpf_sqrt(sqrt_n.get_mpf_t(), nn.get_mpf_t());
    }
    mpf_class approx(0, kPrec);
    for (const auto& [p, c] : exp3.terms) {
      const long e = 2 * n + p;
      if (e < 0) continue;
      mpf_class power(0, kPrec);
      mpf_pow_ui(power.get_mpf_t(), sqrt_n.get_mpf_t(), static_cast<unsigned long>(e));
      approx += c.eval_mpf(kPrec) * power;
    }
    const mpf_class exact_f = exact.to_mpf(kPrec);
    auto format = [](const mpf_class& v) {
      mp_exp_t e10 = 0;
      std::string digits = v.get_str(e10, 10, 20);
      std::string sign;
      if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits = digits.substr(1);
      }
      if (digits.empty()) return std::string("0");
      return sign + "0." + digits + "e" + std::to_string(e10);
    };
    ConvergenceRow row;
    row.n = n;
    row.exact = format(exact_f);
    row.expansion = format(approx);
    mpf_class rel = abs(exact_f - approx) / exact_f;
    row.rel_error = rel.get_d();
    mpf_class scaled = rel;
    for (int i = 0; i < 3; ++i) scaled *= sqrt_n;
    row.scaled_residual = scaled.get_d();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace countlab

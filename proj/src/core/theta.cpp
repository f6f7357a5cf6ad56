#include "theta.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace countlab {

// ---------------------------------------------------------------------------
// ThetaLaurent

ThetaLaurent ThetaLaurent::monomial(int exp, Rational c) {
  ThetaLaurent t;
  t.set(exp, std::move(c));
  return t;
}

ThetaLaurent ThetaLaurent::one_minus_theta_pow(int p) {
  if (p < 0) throw std::invalid_argument("one_minus_theta_pow: negative power");
  ThetaLaurent t;
  for (int i = 0; i <= p; ++i) {
    Rational c(binomial(p, i));
    if (i % 2) c = -c;
    t.set(i, c);
  }
  return t;
}

Rational ThetaLaurent::coeff(int exp) const {
  auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void ThetaLaurent::set(int exp, Rational c) {
  if (c.is_zero()) {
    coeffs_.erase(exp);
  } else {
    coeffs_[exp] = std::move(c);
  }
}

int ThetaLaurent::min_exponent() const {
  if (coeffs_.empty()) throw std::domain_error("ThetaLaurent: zero polynomial has no exponents");
  return coeffs_.begin()->first;
}

int ThetaLaurent::max_exponent() const {
  if (coeffs_.empty()) throw std::domain_error("ThetaLaurent: zero polynomial has no exponents");
  return coeffs_.rbegin()->first;
}

ThetaLaurent ThetaLaurent::operator-() const {
  ThetaLaurent r = *this;
  for (auto& [e, c] : r.coeffs_) c = -c;
  r.log_coeff_ = -r.log_coeff_;
  return r;
}

ThetaLaurent operator+(const ThetaLaurent& a, const ThetaLaurent& b) {
  ThetaLaurent r = a;
  for (const auto& [e, c] : b.coeffs_) r.set(e, r.coeff(e) + c);
  r.log_coeff_ = a.log_coeff_ + b.log_coeff_;
  return r;
}

ThetaLaurent operator-(const ThetaLaurent& a, const ThetaLaurent& b) { return a + (-b); }

ThetaLaurent operator*(const ThetaLaurent& a, const ThetaLaurent& b) {
  if (!a.log_coeff_.is_zero() || !b.log_coeff_.is_zero())
    throw std::invalid_argument("ThetaLaurent: product with log component");
  ThetaLaurent r;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) r.set(ea + eb, r.coeff(ea + eb) + ca * cb);
  return r;
}

ThetaLaurent ThetaLaurent::scaled(const Rational& c) const {
  ThetaLaurent r;
  if (c.is_zero()) return r;
  for (const auto& [e, x] : coeffs_) r.coeffs_[e] = x * c;
  r.log_coeff_ = log_coeff_ * c;
  return r;
}

ThetaLaurent ThetaLaurent::pow(int e) const {
  if (e < 0) throw std::invalid_argument("ThetaLaurent::pow: negative power");
  ThetaLaurent r = ThetaLaurent(Rational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

ThetaLaurent ThetaLaurent::d_operator() const {
  ThetaLaurent r;
  for (const auto& [s, c] : coeffs_) {
    if (s == 0) continue;
    const Rational sc = Rational(s) * c;
    r.set(s - 1, r.coeff(s - 1) + sc);
    r.set(s - 2, r.coeff(s - 2) - sc);
  }
  if (!log_coeff_.is_zero()) {
    r.set(-1, r.coeff(-1) + log_coeff_);
    r.set(-2, r.coeff(-2) - log_coeff_);
  }
  return r;
}

ThetaLaurent ThetaLaurent::divide_by_one_minus_theta(int k) const {
  if (!log_coeff_.is_zero()) throw std::invalid_argument("divide_by_one_minus_theta: log component");
  if (k < 0) throw std::invalid_argument("divide_by_one_minus_theta: negative k");
  if (coeffs_.empty()) return *this;
  const int shift = -min_exponent();
  const int deg = max_exponent() + shift;
  std::vector<Rational> p(static_cast<size_t>(deg) + 1);
  for (const auto& [e, c] : coeffs_) p[static_cast<size_t>(e + shift)] = c;
  for (int round = 0; round < k; ++round) {
    // p = (1-theta) q + R with q_i = -sum_{j>i} p_j and R = p(1).
    Rational suffix(0);
    std::vector<Rational> q(p.size() > 1 ? p.size() - 1 : 0);
    for (size_t i = p.size(); i-- > 1;) {
      suffix += p[i];
      q[i - 1] = -suffix;
    }
    const Rational rem = suffix + p[0];
    if (!rem.is_zero()) throw invariant_error("divide_by_one_minus_theta: nonzero remainder");
    p = std::move(q);
  }
  ThetaLaurent r;
  for (size_t i = 0; i < p.size(); ++i) r.set(static_cast<int>(i) - shift, p[i]);
  return r;
}

ThetaLaurent ThetaLaurent::integrate_from_theta_to_one() const {
  if (!log_coeff_.is_zero()) throw std::invalid_argument("integrate: log component");
  if (!coeff(-1).is_zero()) throw invariant_error("integrate: nonzero t^-1 coefficient");
  ThetaLaurent r;
  Rational constant(0);
  for (const auto& [s, c] : coeffs_) {
    const Rational v = c / Rational(s + 1);
    constant += v;
    r.set(s + 1, r.coeff(s + 1) - v);
  }
  r.set(0, r.coeff(0) + constant);
  return r;
}

std::string ThetaLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (!log_coeff_.is_zero()) {
    out << "(" << log_coeff_ << ")*log(theta)";
    first = false;
  }
  for (const auto& [e, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c << ")";
    if (e != 0) out << "*theta^" << e;
  }
  return out.str();
}

std::string ThetaLaurent::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [e, c] : coeffs_) j[std::to_string(e)] = c.to_string();
  if (!log_coeff_.is_zero()) j["log"] = log_coeff_.to_string();
  return j.dump();
}

ThetaLaurent ThetaLaurent::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ThetaLaurent r;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "log") {
      r.set_log_coeff(Rational::parse(it.value().get<std::string>()));
    } else {
      r.set(std::stoi(it.key()), Rational::parse(it.value().get<std::string>()));
    }
  }
  return r;
}

ExactSeries ThetaLaurent::to_series(int order) const {
  ExactSeries acc = ExactSeries::constant(Rational(0), order);
  for (const auto& [e, c] : coeffs_) acc = acc + theta_power_series(e, order).scaled(c);
  if (!log_coeff_.is_zero()) acc = acc + theta_power_series(1, order).log().scaled(log_coeff_);
  return acc;
}

// ---------------------------------------------------------------------------
// Tree function, coefficient extraction

ExactSeries tree_series(int order) {
  ExactSeries t(order);
  for (long n = 1; n <= order; ++n) {
    t.set_coeff(static_cast<int>(n), Rational(big_pow(n, static_cast<unsigned long>(n - 1)), factorial(n)));
  }
  return t;
}

ExactSeries theta_power_series(int s, int order) {
  ExactSeries theta = ExactSeries::constant(Rational(1), order) - tree_series(order);
  return theta.pow(s);
}

namespace {

// [z^n] T^k = k n^{n-k-1} / (n-k)! for 1 <= k <= n.
Rational tree_power_coeff(long k, long n) {
  if (k < 1 || k > n) return Rational(0);
  return Rational(k) * Rational::int_pow(BigInt(n), n - k - 1) / Rational(factorial(n - k));
}

}  // namespace

Rational theta_power_coeff(int s, long n) {
  if (n < 0) throw std::invalid_argument("theta_power_coeff: negative n");
  if (n == 0) return Rational(1);
  if (s == 0) return Rational(0);
  Rational acc(0);
  if (s > 0) {
    const long kmax = std::min<long>(s, n);
    for (long k = 1; k <= kmax; ++k) {
      Rational term = Rational(binomial(s, k)) * tree_power_coeff(k, n);
      acc += (k % 2) ? -term : term;
    }
  } else {
    const long beta = -s;
    for (long j = 1; j <= n; ++j) {
      acc += Rational(binomial(static_cast<unsigned long>(beta - 1 + j), static_cast<unsigned long>(j))) *
             tree_power_coeff(j, n);
    }
  }
  return acc;
}

Rational ramanujan_q(long n) {
  if (n < 1) throw std::invalid_argument("ramanujan_q: n must be >= 1");
  Rational acc(0);
  BigInt falling(1);
  for (long j = 0; j <= n - 1; ++j) {
    if (j > 0) falling *= BigInt(n - j);
    acc += Rational(falling) / Rational::int_pow(BigInt(n), j);
  }
  return acc;
}

Rational log_theta_coeff(long n) {
  if (n < 1) throw std::invalid_argument("log_theta_coeff: n must be >= 1");
  return -(ramanujan_q(n) * Rational::int_pow(BigInt(n), n - 1) / Rational(factorial(n)));
}

Rational theta_laurent_coeff(const ThetaLaurent& f, long n) {
  Rational acc(0);
  for (const auto& [e, c] : f.coeffs()) acc += c * theta_power_coeff(e, n);
  if (!f.log_coeff().is_zero() && n >= 1) acc += f.log_coeff() * log_theta_coeff(n);
  return acc;
}

Rational lagrange_coeff(LagrangeKind kind, int k, long n) {
  if (k < 1 || k > n) throw std::invalid_argument("lagrange_coeff: need 1 <= k <= n");
  if (kind == LagrangeKind::T_POWER) return tree_power_coeff(k, n);
  // T^k/(1-T): n^{n-k}/(n-k)!
  return Rational::int_pow(BigInt(n), n - k) / Rational(factorial(n - k));
}

// ---------------------------------------------------------------------------
// Wright's recursion

WrightTable::WrightTable(int k_max) : k_max_(k_max) {
  if (k_max < -1) throw std::invalid_argument("WrightTable: k_max must be >= -1");
  w_.reserve(static_cast<size_t>(k_max) + 2);

  ThetaLaurent w_m1;  // T - T^2/2 = 1/2 - theta^2/2
  w_m1.set(0, Rational(1, 2));
  w_m1.set(2, Rational(-1, 2));
  w_.push_back(w_m1);

  ThetaLaurent w0;  // -(1/2) log theta - 3/4 + theta - theta^2/4
  w0.set(0, Rational(-3, 4));
  w0.set(1, Rational(1));
  w0.set(2, Rational(-1, 4));
  w0.set_log_coeff(Rational(-1, 2));
  if (k_max >= 0) w_.push_back(w0);

  for (int k = 1; k <= k_max; ++k) {
    const ThetaLaurent& prev = w_[static_cast<size_t>(k)];  // W_{k-1}
    ThetaLaurent d_prev = prev.d_operator();
    ThetaLaurent two_j = d_prev.d_operator() - d_prev.scaled(Rational(3)) -
                         prev.scaled(Rational(2 * (k - 1)));
    for (int h = 0; h <= k - 1; ++h) {
      two_j = two_j + w_[static_cast<size_t>(h) + 1].d_operator() * w_[static_cast<size_t>(k - 1 - h) + 1].d_operator();
    }
    const ThetaLaurent j_poly = two_j.scaled(Rational(1, 2));
    const ThetaLaurent integrand = ThetaLaurent::one_minus_theta_pow(k - 1) * j_poly;
    const ThetaLaurent integral = integrand.integrate_from_theta_to_one();
    ThetaLaurent wk = integral.divide_by_one_minus_theta(k);
    if (wk.min_exponent() < -3 * k || wk.max_exponent() > 2) {
      throw invariant_error("WrightTable: support outside [-3k, 2] at k=" + std::to_string(k));
    }
    w_.push_back(std::move(wk));
  }

  dw_.reserve(w_.size());
  d2w_.reserve(w_.size());
  for (const auto& wk : w_) {
    ThetaLaurent dw = wk.d_operator();
    d2w_.push_back(dw.d_operator() - dw);  // z^2 W'' = D(zW') - zW'
    dw_.push_back(std::move(dw));
  }
}

const ThetaLaurent& WrightTable::w(int k) const {
  if (k < -1 || k > k_max_) throw std::out_of_range("WrightTable::w: k out of range");
  return w_[static_cast<size_t>(k + 1)];
}

const ThetaLaurent& WrightTable::zw_prime(int k) const {
  if (k < -1 || k > k_max_) throw std::out_of_range("WrightTable::zw_prime: k out of range");
  return dw_[static_cast<size_t>(k + 1)];
}

const ThetaLaurent& WrightTable::z2w_double_prime(int k) const {
  if (k < -1 || k > k_max_) throw std::out_of_range("WrightTable::z2w_double_prime: k out of range");
  return d2w_[static_cast<size_t>(k + 1)];
}

ChiTriple chi_triple(const WrightTable& table, int k) {
  if (k < 1) throw std::invalid_argument("chi_triple: k must be >= 1");
  const ThetaLaurent& wk = table.w(k);
  ChiTriple t{wk.coeff(-3 * k), wk.coeff(-3 * k + 1), wk.coeff(-3 * k + 2)};
  if (!(t.chi > Rational(0))) throw invariant_error("chi_triple: leading coefficient not positive");
  return t;
}

Rational sigma_value(int k) {
  if (k < 0) throw std::invalid_argument("sigma_value: k must be >= 0");
  static std::vector<Rational> memo = {Rational(1, 4), Rational(5, 16)};
  while (static_cast<int>(memo.size()) <= k) {
    const int m = static_cast<int>(memo.size()) - 1;  // recursion advances m -> m+1
    Rational next = Rational(3 * (m + 1), 2) * memo[static_cast<size_t>(m)];
    for (int s = 1; s <= m - 1; ++s) next += memo[static_cast<size_t>(s)] * memo[static_cast<size_t>(m - s)];
    memo.push_back(next);
  }
  return memo[static_cast<size_t>(k)];
}

Rational exact_connected_count(const WrightTable& table, long n, int k) {
  if (n < 1) throw std::invalid_argument("exact_connected_count: n must be >= 1");
  if (k < -1) throw std::invalid_argument("exact_connected_count: k must be >= -1");
  if (k == -1) return n == 1 ? Rational(1) : Rational::int_pow(BigInt(n), n - 2);
  return Rational(factorial(n)) * theta_laurent_coeff(table.w(k), n);
}

Rational exact_pair_count_small_excess(long n, int k) {
  if (n < 3) throw std::invalid_argument("exact_pair_count_small_excess: n must be >= 3");
  if (k == -1) return Rational(3) * Rational::int_pow(BigInt(n), n - 4);
  if (k != 0) throw std::invalid_argument("exact_pair_count_small_excess: closed route only for k in {-1,0}");
  // I1 + 2 I2 + 3 I3 with I1 = n^{n-3}, I2 = n^{n-3} - 3n^{n-4},
  // I3 = (1/2)(n-3)! [z^n] (1-theta)^5 theta^-2.
  const Rational i1 = Rational::int_pow(BigInt(n), n - 3);
  const Rational i2 = i1 - Rational(3) * Rational::int_pow(BigInt(n), n - 4);
  const ThetaLaurent t5_over = ThetaLaurent::one_minus_theta_pow(5) * ThetaLaurent::monomial(-2, Rational(1));
  const Rational i3 = Rational(1, 2) * Rational(factorial(n - 3)) * theta_laurent_coeff(t5_over, n);
  return i1 + Rational(2) * i2 + Rational(3) * i3;
}

// ---------------------------------------------------------------------------
// Identity suite

namespace {

Rational conv_c1(const WrightTable& t, int r) {
  Rational acc(0);
  for (int j = 1; j <= r - 2; ++j)
    acc += Rational(9 * j * (r - 1 - j)) * chi_triple(t, j).chi * chi_triple(t, r - 1 - j).chi;
  return acc;
}

Rational conv_c2(const WrightTable& t, int r) {
  Rational acc(0);
  for (int j = 1; j <= r - 2; ++j) {
    const auto cj = chi_triple(t, j);
    const auto cr = chi_triple(t, r - 1 - j);
    acc += Rational(3 * j * (3 * (r - 1 - j) - 1)) * cj.chi * cr.chi_tilde;
    acc += Rational(3 * (r - 1 - j) * (3 * j - 1)) * cj.chi_tilde * cr.chi;
  }
  return acc;
}

void require(IdentityReport& rep, bool ok, const std::string& what) {
  ++rep.checks;
  if (!ok) {
    rep.all_hold = false;
    rep.failures.push_back(what);
  }
}

}  // namespace

IdentityReport recursion_identity_suite(const WrightTable& table, int k_max) {
  if (k_max > table.k_max()) throw std::invalid_argument("recursion_identity_suite: table too small");
  IdentityReport rep;
  for (int k = 3; k <= k_max; ++k) {
    const auto ck = chi_triple(table, k);
    const auto ck1 = chi_triple(table, k - 1);
    const auto ck2 = chi_triple(table, k - 2);
    const Rational c1 = conv_c1(table, k);
    const Rational c2 = conv_c2(table, k);

    require(rep,
            Rational(2) * ck.chi == Rational(3 * (k - 1)) * ck1.chi + c1 / Rational(3 * k),
            "chi recursion at k=" + std::to_string(k));
    {
      const Rational lhs = Rational(2) * (ck.chi_tilde - Rational(k) * ck.chi) * Rational(3 * k - 1);
      const Rational rhs = Rational(-3 * (k - 1)) * Rational(3 * k * k + 3 * k + 1) * ck1.chi +
                           Rational((3 * k - 1) * (3 * k - 4)) * ck1.chi_tilde - Rational(k + 1) * c1 + c2;
      require(rep, lhs == rhs, "chi-tilde recursion at k=" + std::to_string(k));
    }
    {
      Rational s(0);
      for (int j = 1; j <= k - 3; ++j) {
        const long m = k - 2 - j;
        s += Rational(3 * j) * Rational(9 * m * m + 6 * m) * chi_triple(table, j).chi * chi_triple(table, static_cast<int>(m)).chi;
      }
      const Rational rhs = Rational(3, 2) * Rational(k - 1) * Rational(3 * k - 2) *
                           (Rational(2) * ck1.chi - Rational(3 * (k - 2)) * ck2.chi);
      require(rep, s == rhs, "pair-convolution simplification at k=" + std::to_string(k));
    }
    {
      Rational s3(0);
      for (int k1 = 1; k1 <= k - 4; ++k1)
        for (int k2 = 1; k2 <= k - 3 - k1; ++k2) {
          const int k3 = k - 2 - k1 - k2;
          if (k3 < 1) continue;
          s3 += Rational(27 * k1 * k2 * k3) * chi_triple(table, k1).chi * chi_triple(table, k2).chi *
                chi_triple(table, k3).chi;
        }
      const Rational rhs = Rational(2) * c1 - Rational(3 * k, 2) * conv_c1(table, k - 1) -
                           Rational(15, 4) * Rational(k - 2) * ck2.chi;
      require(rep, s3 == rhs, "triple-convolution simplification at k=" + std::to_string(k));
    }

    if (k < 6) continue;

    // Direct theta-expansion of the ordered triple product of z W' factors.
    ThetaLaurent triple;
    for (int k1 = -1; k1 <= k; ++k1)
      for (int k2 = -1; k2 <= k - 1 - k1; ++k2) {
        const int k3 = k - 2 - k1 - k2;
        triple = triple + table.zw_prime(k1) * table.zw_prime(k2) * table.zw_prime(k3);
      }
    const Rational f_lead = Rational(9 * k) * ck.chi;
    const Rational f_def_mid = Rational(3 * (3 * k - 1)) * ck.chi_tilde - Rational(27 * k) * ck.chi +
                               Rational(9 * (k - 1)) * ck1.chi + Rational(3) * c1;
    const Rational f_mid = Rational(3 * (3 * k - 1)) * ck.chi_tilde - Rational(9 * k) * ck.chi -
                           Rational(9 * (k - 1) * (3 * k - 1)) * ck1.chi;
    require(rep, triple.coeff(-3 * k - 2) == f_lead, "triple-product lead coefficient at k=" + std::to_string(k));
    require(rep, triple.coeff(-3 * k - 1) == f_def_mid, "triple-product mid coefficient (definition) at k=" + std::to_string(k));
    require(rep, triple.coeff(-3 * k - 1) == f_mid, "triple-product mid coefficient (simplified) at k=" + std::to_string(k));
    const Rational f_low = Rational(3 * (3 * k - 2)) * ck.chi_hat - Rational(3 * (3 * k - 1)) * ck.chi_tilde +
                           Rational(9 * k) * ck.chi - Rational(3 * (3 * k - 4) * (3 * k - 2)) * ck1.chi_tilde +
                           Rational(27 * (k - 1) * (2 * k - 1)) * ck1.chi +
                           Rational(3, 2) * Rational((k - 2) * (3 * k - 4)) * Rational(3 * k - 2) * ck2.chi;
    require(rep, triple.coeff(-3 * k) == f_low, "triple-product low coefficient (simplified) at k=" + std::to_string(k));

    // Mixed W' W'' convolution used by the pair-count pipeline.
    ThetaLaurent mixed;
    for (int l = -1; l <= k - 1; ++l) mixed = mixed + table.zw_prime(l) * table.z2w_double_prime(k - 2 - l);
    require(rep,
            mixed.coeff(-3 * k - 1) == Rational(9 * k * k - 12 * k + 3) * ck1.chi,
            "mixed-product lead coefficient at k=" + std::to_string(k));
    {
      Rational s(0);
      for (int j = 1; j <= k - 3; ++j) {
        const long m = k - 2 - j;
        s += Rational(3 * j) * Rational(9 * m * m + 6 * m) * chi_triple(table, j).chi * chi_triple(table, static_cast<int>(m)).chi;
      }
      const Rational expect = Rational(9 * k * k - 18 * k + 8) * ck1.chi_tilde -
                              Rational(27 * k * k - 42 * k + 15) * ck1.chi +
                              Rational(3, 2) * Rational(3 * k * k - 8 * k + 4) * ck2.chi + s;
      require(rep, mixed.coeff(-3 * k) == expect, "mixed-product low coefficient at k=" + std::to_string(k));
    }
  }
  return rep;
}

}  // namespace countlab

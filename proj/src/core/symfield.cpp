#include "symfield.hpp"

#include <cmath>
#include <stdexcept>

namespace countlab {

// ---------------------------------------------------------------------------
// PolyS

PolyS PolyS::monomial(Quad2 c, int degree) {
  PolyS p;
  if (c.is_zero()) return p;
  if (degree < 0) throw std::invalid_argument("PolyS::monomial: negative degree");
  p.coeffs_.assign(static_cast<size_t>(degree) + 1, Quad2(0));
  p.coeffs_.back() = std::move(c);
  return p;
}

Quad2 PolyS::coeff(int d) const {
  if (d < 0 || d >= static_cast<int>(coeffs_.size())) return Quad2(0);
  return coeffs_[static_cast<size_t>(d)];
}

const Quad2& PolyS::leading() const {
  if (coeffs_.empty()) throw std::domain_error("PolyS::leading: zero polynomial");
  return coeffs_.back();
}

void PolyS::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

PolyS PolyS::operator-() const {
  PolyS r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PolyS operator+(const PolyS& x, const PolyS& y) {
  PolyS r;
  r.coeffs_.resize(std::max(x.coeffs_.size(), y.coeffs_.size()), Quad2(0));
  for (size_t i = 0; i < x.coeffs_.size(); ++i) r.coeffs_[i] += x.coeffs_[i];
  for (size_t i = 0; i < y.coeffs_.size(); ++i) r.coeffs_[i] += y.coeffs_[i];
  r.trim();
  return r;
}

PolyS operator-(const PolyS& x, const PolyS& y) { return x + (-y); }

PolyS operator*(const PolyS& x, const PolyS& y) {
  PolyS r;
  if (x.is_zero() || y.is_zero()) return r;
  r.coeffs_.assign(x.coeffs_.size() + y.coeffs_.size() - 1, Quad2(0));
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < y.coeffs_.size(); ++j) {
      r.coeffs_[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

PolyS PolyS::scaled(const Quad2& c) const {
  PolyS r;
  if (c.is_zero()) return r;
  r.coeffs_ = coeffs_;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

void PolyS::divmod(const PolyS& num, const PolyS& den, PolyS& quot, PolyS& rem) {
  if (den.is_zero()) throw std::domain_error("PolyS::divmod: zero divisor");
  quot = PolyS();
  rem = num;
  const int dd = den.degree();
  const Quad2 lead_inv = den.leading().inv();
  while (!rem.is_zero() && rem.degree() >= dd) {
    const int shift = rem.degree() - dd;
    const Quad2 c = rem.leading() * lead_inv;
    PolyS t = PolyS::monomial(c, shift);
    quot = quot + t;
    rem = rem - t * den;
  }
}

PolyS PolyS::gcd(PolyS x, PolyS y) {
  while (!y.is_zero()) {
    PolyS q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.scaled(x.leading().inv());  // monic
}

std::string PolyS::to_string(const std::string& sym_name) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const Quad2 c = coeff(d);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c.to_string();
    if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos) cs = "(" + cs + ")";
    if (d == 0) {
      out += cs;
    } else {
      out += (cs == "1" ? "" : cs + "*") + sym_name + (d == 1 ? "" : "^" + std::to_string(d));
    }
  }
  return out;
}

double PolyS::eval_double(double s_value) const {
  double acc = 0.0;
  for (int d = degree(); d >= 0; --d) acc = acc * s_value + coeff(d).to_double();
  return acc;
}

mpf_class PolyS::eval_mpf(const mpf_class& s_value, unsigned prec_bits) const {
  mpf_class acc(0, prec_bits);
  for (int d = degree(); d >= 0; --d) acc = acc * s_value + coeff(d).to_mpf(prec_bits);
  return acc;
}

// ---------------------------------------------------------------------------
// SymCoeff

SymCoeff::SymCoeff(PolyS num, PolyS den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("SymCoeff: zero denominator");
  normalize();
}

void SymCoeff::normalize() {
  if (num_.is_zero()) {
    den_ = PolyS(1);
    return;
  }
  PolyS g = PolyS::gcd(num_, den_);
  if (g.degree() > 0) {
    PolyS q, r;
    PolyS::divmod(num_, g, q, r);
    num_ = q;
    PolyS::divmod(den_, g, q, r);
    den_ = q;
  }
  const Quad2 lead = den_.leading();
  if (!(lead == Quad2(1))) {
    const Quad2 inv = lead.inv();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

bool SymCoeff::is_rational(Rational* out) const {
  if (den_.degree() != 0 || num_.degree() > 0) return false;
  const Quad2 v = num_.coeff(0);
  if (!v.is_rational()) return false;
  if (out) *out = v.a;
  return true;
}

SymCoeff SymCoeff::operator-() const {
  SymCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

SymCoeff operator+(const SymCoeff& x, const SymCoeff& y) {
  return SymCoeff(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}
SymCoeff operator-(const SymCoeff& x, const SymCoeff& y) { return x + (-y); }
SymCoeff operator*(const SymCoeff& x, const SymCoeff& y) {
  return SymCoeff(x.num_ * y.num_, x.den_ * y.den_);
}
SymCoeff operator/(const SymCoeff& x, const SymCoeff& y) {
  if (y.is_zero()) throw std::domain_error("SymCoeff: division by zero");
  return SymCoeff(x.num_ * y.den_, x.den_ * y.num_);
}

SymCoeff SymCoeff::inv() const {
  if (is_zero()) throw std::domain_error("SymCoeff: inverse of zero");
  return SymCoeff(den_, num_);
}

std::string SymCoeff::to_string(const std::string& sym_name) const {
  if (num_.is_zero()) return "0";
  std::string ns = num_.to_string(sym_name);
  if (den_ == PolyS(1)) return ns;
  std::string ds = den_.to_string(sym_name);
  return "(" + ns + ")/(" + ds + ")";
}

SymCoeff SymCoeff::parse(const std::string& text) {
  // factor ["*s" ["^" int]]
  std::string body = text;
  int sdeg = 0;
  const auto star = body.rfind("*s");
  if (star != std::string::npos && (star + 2 == body.size() || body[star + 2] == '^')) {
    if (star + 2 == body.size()) {
      sdeg = 1;
    } else {
      sdeg = std::stoi(body.substr(star + 3));
    }
    body = body.substr(0, star);
  } else if (body == "s") {
    sdeg = 1;
    body = "1";
  }
  const Quad2 c = Quad2::parse(body);
  if (sdeg >= 0) return SymCoeff(PolyS::monomial(c, sdeg), PolyS(1));
  return SymCoeff(PolyS(c), PolyS::monomial(Quad2(1), -sdeg));
}

double SymCoeff::eval_double() const {
  const double s = std::sqrt(2.0 * M_PI);
  return num_.eval_double(s) / den_.eval_double(s);
}

mpf_class SymCoeff::eval_mpf(unsigned prec_bits) const {
  // s = sqrt(2*pi) to the requested precision (pi via arctan-free GMP route:
  // use the mpf sqrt of 2*pi computed from a high-precision pi literal).
  static const char* kPiDigits =
      "3.14159265358979323846264338327950288419716939937510582097494459230781"
      "64062862089986280348253421170679821480865132823066470938446095505822317"
      "25359408128481117450284102701938521105559644622948954930381964428810975"
      "66593344612847564823378678316527120190914564856692346034861045432664821"
      "3393607260249141273724587006606315588174881520920962829254091715364";
  mpf_class pi(kPiDigits, prec_bits);
  mpf_class two_pi = 2 * pi;
  mpf_class s(0, prec_bits);
  mpf_sqrt(s.get_mpf_t(), two_pi.get_mpf_t());
  return num_.eval_mpf(s, prec_bits) / den_.eval_mpf(s, prec_bits);
}

// ---------------------------------------------------------------------------
// gamma_half

const SymCoeff& GammaValue::value() const {
  if (infinite_) throw std::domain_error("GammaValue: value() of infinite");
  return value_;
}

GammaValue gamma_half(long m) {
  if (m <= 0 && m % 2 == 0) return GammaValue::infinite();
  if (m % 2 == 0) {
    // Gamma(m/2) = (m/2 - 1)!
    return GammaValue::finite(SymCoeff(Rational(factorial(static_cast<unsigned long>(m / 2 - 1)))));
  }
  // Odd m: rational multiple of sqrt(pi). Walk from Gamma(1/2) = sqrt(pi)
  // using Gamma(x+1) = x Gamma(x) upward and Gamma(x) = Gamma(x+1)/x downward.
  Rational mult(1);
  long t = 1;  // tracks Gamma(t/2) = mult * sqrt(pi)
  while (t < m) {
    mult *= Rational(t, 2);
    t += 2;
  }
  while (t > m) {
    t -= 2;
    mult /= Rational(t, 2);
  }
  return GammaValue::finite(SymCoeff(mult) * SymCoeff::sqrt_pi());
}

}  // namespace countlab

#include "quad2.hpp"

#include <cmath>
#include <stdexcept>

namespace countlab {

Quad2 Quad2::pow2_half(long h) {
  const long whole = (h >= 0) ? h / 2 : -((-h + 1) / 2);
  const bool half = (h % 2) != 0;
  Rational p = Rational(2).pow(whole);
  if (!half) return Quad2(p);
  // 2^(whole + 1/2) = 2^whole * sqrt(2)
  return Quad2(Rational(0), p);
}

int Quad2::sign() const {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| against |b|sqrt(2) via squares.
  const Rational a2 = a * a;
  const Rational b2 = Rational(2) * b * b;
  if (a2 == b2) {
    // a = -b*sqrt(2) is impossible for rationals unless both are zero.
    throw invariant_error("Quad2::sign: a^2 == 2 b^2 with nonzero parts");
  }
  return a2 > b2 ? sa : sb;
}

Quad2& Quad2::operator*=(const Quad2& o) {
  const Rational na = a * o.a + Rational(2) * b * o.b;
  const Rational nb = a * o.b + b * o.a;
  a = na;
  b = nb;
  return *this;
}

Quad2 Quad2::inv() const {
  // 1/(a+b r2) = (a - b r2)/(a^2 - 2 b^2)
  const Rational norm = a * a - Rational(2) * b * b;
  if (norm.is_zero()) throw std::domain_error("Quad2: inverse of zero");
  return Quad2(a / norm, -b / norm);
}

Quad2& Quad2::operator/=(const Quad2& o) { return *this *= o.inv(); }

Quad2 Quad2::pow(long e) const {
  if (e == 0) return Quad2(1);
  Quad2 base = e < 0 ? inv() : *this;
  unsigned long ue = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Quad2 r(1);
  while (ue) {
    if (ue & 1) r *= base;
    base *= base;
    ue >>= 1;
  }
  return r;
}

std::string Quad2::to_string() const {
  if (b.is_zero()) return a.to_string();
  std::string bs = b.to_string() + "*r2";
  if (a.is_zero()) return bs;
  return a.to_string() + (b.sign() > 0 ? "+" : "") + bs;
}

Quad2 Quad2::parse(const std::string& s) {
  // Grammar: [rat] [(+|-) rat "*r2"] | rat "*r2"
  const auto star = s.find("*r2");
  if (star == std::string::npos) return Quad2(Rational::parse(s));
  // Split the b-part off: scan back from '*' to the preceding top-level +/-.
  size_t split = std::string::npos;
  for (size_t i = star; i-- > 0;) {
    const char c = s[i];
    if ((c == '+' || c == '-') && i > 0 && s[i - 1] != '/' && std::isdigit(static_cast<unsigned char>(s[i - 1]))) {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    return Quad2(Rational(0), Rational::parse(s.substr(0, star)));
  }
  Rational ra = Rational::parse(s.substr(0, split));
  std::string bpart = s.substr(split, star - split);
  if (!bpart.empty() && bpart[0] == '+') bpart = bpart.substr(1);
  return Quad2(ra, Rational::parse(bpart));
}

double Quad2::to_double() const { return a.to_double() + b.to_double() * std::sqrt(2.0); }

mpf_class Quad2::to_mpf(unsigned prec_bits) const {
  mpf_class two(2, prec_bits);
  mpf_class s2(0, prec_bits);
  mpf_sqrt(s2.get_mpf_t(), two.get_mpf_t());
  return a.to_mpf(prec_bits) + b.to_mpf(prec_bits) * s2;
}

}  // namespace countlab

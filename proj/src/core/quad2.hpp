#pragma once

#include <string>

#include "rational.hpp"

namespace countlab {

// Element a + b*sqrt(2) of Q(sqrt 2). Equality is componentwise; the sign of
// a nonzero element is decidable exactly by comparing a^2 against 2 b^2.
struct Quad2 {
  Rational a;
  Rational b;

  Quad2() = default;
  Quad2(long v) : a(v) {}  // NOLINT: implicit by design
  Quad2(Rational ra) : a(std::move(ra)) {}  // NOLINT
  Quad2(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static Quad2 sqrt2() { return Quad2(Rational(0), Rational(1)); }
  // 2^(h/2) for any integer h (half-integer powers of two show up all over the
  // singularity-analysis constants).
  static Quad2 pow2_half(long h);

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  bool is_rational() const { return b.is_zero(); }

  // Exact sign in the real embedding with sqrt(2) > 0.
  int sign() const;

  Quad2 operator-() const { return Quad2(-a, -b); }
  Quad2& operator+=(const Quad2& o) { a += o.a; b += o.b; return *this; }
  Quad2& operator-=(const Quad2& o) { a -= o.a; b -= o.b; return *this; }
  Quad2& operator*=(const Quad2& o);
  Quad2& operator/=(const Quad2& o);

  friend Quad2 operator+(Quad2 x, const Quad2& y) { return x += y; }
  friend Quad2 operator-(Quad2 x, const Quad2& y) { return x -= y; }
  friend Quad2 operator*(Quad2 x, const Quad2& y) { return x *= y; }
  friend Quad2 operator/(Quad2 x, const Quad2& y) { return x /= y; }
  friend bool operator==(const Quad2& x, const Quad2& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Quad2& x, const Quad2& y) { return !(x == y); }

  Quad2 inv() const;
  Quad2 pow(long e) const;

  std::string to_string() const;  // "a", "b*r2", or "a+b*r2" with r2 = sqrt(2)
  static Quad2 parse(const std::string& s);
  double to_double() const;
  mpf_class to_mpf(unsigned prec_bits) const;
};

}  // namespace countlab

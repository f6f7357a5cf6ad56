#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bigint.hpp"

namespace countlab {

// Arbitrary-precision rational, always reduced, denominator > 0.
// Thin wrapper over GMP's mpq so the rest of the code reads in domain terms
// and serialization is pinned to the "num/den" form.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors int literals
  Rational(const BigInt& n) : q_(n) {}
  Rational(long num, long den) : q_(num, den) { canonicalize(); }
  Rational(const BigInt& num, const BigInt& den) : q_(num, den) { canonicalize(); }

  static Rational parse(const std::string& s);

  const BigInt num() const { return BigInt(mpq_numref(q_.get_mpq_t())); }
  const BigInt den() const { return BigInt(mpq_denref(q_.get_mpq_t())); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(-q_); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inv() const;
  // Integer exponent, negative allowed for nonzero values.
  Rational pow(long e) const;

  // n^e for integer n >= 1 and any integer e (covers the n^{n-k-...} factors).
  static Rational int_pow(const BigInt& base, long e);

  std::string to_string() const;      // "num/den", or "num" when den == 1
  double to_double() const { return q_.get_d(); }
  mpf_class to_mpf(unsigned prec_bits) const { return mpf_class(q_, prec_bits); }

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(const mpq_class& q) : q_(q) {}
  void canonicalize() { q_.canonicalize(); }

  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace countlab

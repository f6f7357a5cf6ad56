#pragma once

#include <string>
#include <vector>

#include "quad2.hpp"

namespace countlab {

// Dense polynomial in the formal symbol s (standing for sqrt(2*pi)) with
// Quad2 coefficients. s is transcendental here: s^2 is never rewritten as a
// rational, so equality in the fraction field below is decidable.
class PolyS {
 public:
  PolyS() = default;
  PolyS(Quad2 c) { if (!c.is_zero()) coeffs_.push_back(std::move(c)); }  // NOLINT
  PolyS(long v) : PolyS(Quad2(v)) {}                                     // NOLINT
  static PolyS monomial(Quad2 c, int degree);
  static PolyS sym() { return monomial(Quad2(1), 1); }  // the symbol s itself

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Quad2 coeff(int d) const;
  const Quad2& leading() const;

  PolyS operator-() const;
  friend PolyS operator+(const PolyS& x, const PolyS& y);
  friend PolyS operator-(const PolyS& x, const PolyS& y);
  friend PolyS operator*(const PolyS& x, const PolyS& y);
  friend bool operator==(const PolyS& x, const PolyS& y) { return x.coeffs_ == y.coeffs_; }
  friend bool operator!=(const PolyS& x, const PolyS& y) { return !(x == y); }

  PolyS scaled(const Quad2& c) const;
  // Euclidean division; both outputs exact over the field Quad2.
  static void divmod(const PolyS& num, const PolyS& den, PolyS& quot, PolyS& rem);
  static PolyS gcd(PolyS x, PolyS y);  // monic gcd

  std::string to_string(const std::string& sym_name = "s") const;
  double eval_double(double s_value) const;
  mpf_class eval_mpf(const mpf_class& s_value, unsigned prec_bits) const;

 private:
  void trim();
  std::vector<Quad2> coeffs_;  // coeffs_[d] multiplies s^d
};

// Element of the rational-function field Quad2(s), kept gcd-reduced with a
// monic denominator so equality is componentwise.
class SymCoeff {
 public:
  SymCoeff() : num_(), den_(1) {}
  SymCoeff(long v) : num_(v), den_(1) {}            // NOLINT
  SymCoeff(Rational r) : num_(Quad2(std::move(r))), den_(1) {}  // NOLINT
  SymCoeff(Quad2 q) : num_(std::move(q)), den_(1) {}            // NOLINT
  SymCoeff(PolyS num, PolyS den);

  static SymCoeff sym() { return SymCoeff(PolyS::sym(), PolyS(1)); }          // s = sqrt(2*pi)
  static SymCoeff sqrt_pi() { return SymCoeff(PolyS::monomial(Quad2(Rational(0), Rational(1, 2)), 1), PolyS(1)); }  // s/sqrt(2)

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational(Rational* out = nullptr) const;
  const PolyS& num() const { return num_; }
  const PolyS& den() const { return den_; }

  SymCoeff operator-() const;
  friend SymCoeff operator+(const SymCoeff& x, const SymCoeff& y);
  friend SymCoeff operator-(const SymCoeff& x, const SymCoeff& y);
  friend SymCoeff operator*(const SymCoeff& x, const SymCoeff& y);
  friend SymCoeff operator/(const SymCoeff& x, const SymCoeff& y);
  SymCoeff& operator+=(const SymCoeff& o) { return *this = *this + o; }
  SymCoeff& operator-=(const SymCoeff& o) { return *this = *this - o; }
  SymCoeff& operator*=(const SymCoeff& o) { return *this = *this * o; }
  SymCoeff& operator/=(const SymCoeff& o) { return *this = *this / o; }
  friend bool operator==(const SymCoeff& x, const SymCoeff& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
  friend bool operator!=(const SymCoeff& x, const SymCoeff& y) { return !(x == y); }

  SymCoeff inv() const;

  // Serialization keeps the symbol; display may name it "sqrt(2*pi)".
  std::string to_string(const std::string& sym_name = "s") const;
  std::string display() const { return to_string("sqrt(2*pi)"); }
  // Tiny exact grammar used by golden tables: "5/24", "-35/144", "5/256*s",
  // "1/2+1/3*r2", "7/6*s^-1" (a single rational-or-Quad2 factor times s^d).
  static SymCoeff parse(const std::string& text);

  double eval_double() const;  // s -> sqrt(2*pi) numerically
  mpf_class eval_mpf(unsigned prec_bits) const;

 private:
  void normalize();
  PolyS num_;
  PolyS den_;
};

// Gamma(m/2) in the SymCoeff field, with the conventions that Gamma at
// non-positive integers is infinite and 1/infinite = 0.
class GammaValue {
 public:
  static GammaValue infinite() { GammaValue g; g.infinite_ = true; return g; }
  static GammaValue finite(SymCoeff v) { GammaValue g; g.value_ = std::move(v); return g; }

  bool is_infinite() const { return infinite_; }
  const SymCoeff& value() const;
  SymCoeff reciprocal() const { return infinite_ ? SymCoeff(0) : value_.inv(); }

 private:
  GammaValue() = default;
  bool infinite_ = false;
  SymCoeff value_;
};

// Gamma(m/2) for any integer m. Even positive m gives (m/2-1)!; odd m gives a
// rational multiple of sqrt(pi) carried as s/sqrt(2); m = 0, -2, -4, ... is
// infinite. Gamma(-1/2) = -2 sqrt(pi).
GammaValue gamma_half(long m);

}  // namespace countlab

#include "rational.hpp"

#include <ostream>
#include <stdexcept>

namespace countlab {

Rational Rational::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) {
    throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
  }
  q.canonicalize();
  Rational r;
  r.q_ = q;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::inv() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(1) / *this;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  if (is_zero()) {
    if (e < 0) throw std::domain_error("Rational: 0 to negative power");
    return Rational(0);
  }
  const bool neg = e < 0;
  const unsigned long ue = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational r(big_pow(num(), ue), big_pow(den(), ue));
  return neg ? r.inv() : r;
}

Rational Rational::int_pow(const BigInt& base, long e) {
  if (base <= 0) throw std::invalid_argument("Rational::int_pow: base must be positive");
  if (e >= 0) return Rational(big_pow(base, static_cast<unsigned long>(e)));
  return Rational(BigInt(1), big_pow(base, static_cast<unsigned long>(-e)));
}

std::string Rational::to_string() const {
  return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace countlab

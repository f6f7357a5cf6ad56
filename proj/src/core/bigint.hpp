#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace countlab {

using BigInt = mpz_class;

// Thrown when an internal exactness invariant breaks (nonzero remainder in a
// division that must be exact, unexpected t^-1 term, ...). These are hard
// failures, not recoverable conditions.
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// n^e with e possibly negative is handled at the Rational level; this is the
// nonnegative integer case only.
inline BigInt big_pow(long base, unsigned long exp) { return big_pow(BigInt(base), exp); }

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

}  // namespace countlab

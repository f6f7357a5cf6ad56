#pragma once

#include <vector>

#include "rational.hpp"

namespace countlab {

// Truncated formal power series over Q with exact coefficients. Every series
// carries its reliable truncation order; reads beyond it are errors rather
// than silent zeros.
class ExactSeries {
 public:
  ExactSeries() = default;
  explicit ExactSeries(int order) : order_(order), c_(static_cast<size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("ExactSeries: negative order");
  }
  static ExactSeries constant(const Rational& c, int order);

  int order() const { return order_; }
  const Rational& coeff(int n) const;
  void set_coeff(int n, Rational v);

  // Lowest index with nonzero coefficient, or order+1 if identically zero.
  int valuation() const;

  ExactSeries operator-() const;
  friend ExactSeries operator+(const ExactSeries& a, const ExactSeries& b);
  friend ExactSeries operator-(const ExactSeries& a, const ExactSeries& b);
  friend ExactSeries operator*(const ExactSeries& a, const ExactSeries& b);
  ExactSeries scaled(const Rational& c) const;

  ExactSeries inverse() const;              // needs unit constant term
  ExactSeries divide(const ExactSeries& b) const;  // exact when val(b) <= val(a)
  ExactSeries pow(long e) const;            // negative e via inverse
  ExactSeries derivative() const;           // order drops by one
  ExactSeries integrate() const;            // order rises by one, constant 0
  ExactSeries log() const;                  // needs constant term 1
  ExactSeries exp() const;                  // needs constant term 0
  ExactSeries shift(int k) const;           // multiply by z^k (k may be negative; needs valuation >= -k)
  ExactSeries truncated(int order) const;

  bool is_zero_through(int order) const;

 private:
  int order_ = -1;  // -1 marks an empty/unusable series
  std::vector<Rational> c_;
};

}  // namespace countlab

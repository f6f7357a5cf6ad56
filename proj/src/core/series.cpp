#include "series.hpp"

#include <algorithm>

namespace countlab {

ExactSeries ExactSeries::constant(const Rational& c, int order) {
  ExactSeries s(order);
  s.c_[0] = c;
  return s;
}

const Rational& ExactSeries::coeff(int n) const {
  if (n < 0 || n > order_) throw std::out_of_range("ExactSeries::coeff: index beyond truncation order");
  return c_[static_cast<size_t>(n)];
}

void ExactSeries::set_coeff(int n, Rational v) {
  if (n < 0 || n > order_) throw std::out_of_range("ExactSeries::set_coeff: index beyond truncation order");
  c_[static_cast<size_t>(n)] = std::move(v);
}

int ExactSeries::valuation() const {
  for (int i = 0; i <= order_; ++i)
    if (!c_[static_cast<size_t>(i)].is_zero()) return i;
  return order_ + 1;
}

ExactSeries ExactSeries::operator-() const {
  ExactSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ExactSeries operator+(const ExactSeries& a, const ExactSeries& b) {
  ExactSeries r(std::min(a.order_, b.order_));
  for (int i = 0; i <= r.order_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

ExactSeries operator-(const ExactSeries& a, const ExactSeries& b) { return a + (-b); }

ExactSeries operator*(const ExactSeries& a, const ExactSeries& b) {
  ExactSeries r(std::min(a.order_, b.order_));
  for (int i = 0; i <= std::min(a.order_, r.order_); ++i) {
    if (a.c_[i].is_zero()) continue;
    const int jmax = std::min(b.order_, r.order_ - i);
    for (int j = 0; j <= jmax; ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

ExactSeries ExactSeries::scaled(const Rational& c) const {
  ExactSeries r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

ExactSeries ExactSeries::inverse() const {
  if (order_ < 0 || c_[0].is_zero()) throw std::domain_error("ExactSeries::inverse: constant term is zero");
  ExactSeries r(order_);
  const Rational inv0 = c_[0].inv();
  r.c_[0] = inv0;
  for (int n = 1; n <= order_; ++n) {
    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
    r.c_[n] = -inv0 * acc;
  }
  return r;
}

ExactSeries ExactSeries::divide(const ExactSeries& b) const {
  const int vb = b.valuation();
  if (vb > b.order_) throw std::domain_error("ExactSeries::divide: divisor is zero");
  if (vb == 0) return *this * b.inverse();
  if (valuation() < vb) throw std::domain_error("ExactSeries::divide: valuation mismatch");
  return shift(-vb) * b.shift(-vb).inverse();
}

ExactSeries ExactSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ExactSeries r = ExactSeries::constant(Rational(1), order_);
  ExactSeries base = *this;
  unsigned long ue = static_cast<unsigned long>(e);
  while (ue) {
    if (ue & 1) r = r * base;
    base = base * base;
    ue >>= 1;
  }
  return r;
}

ExactSeries ExactSeries::derivative() const {
  if (order_ < 1) throw std::domain_error("ExactSeries::derivative: order too small");
  ExactSeries r(order_ - 1);
  for (int n = 0; n < order_; ++n) r.c_[n] = Rational(n + 1) * c_[n + 1];
  return r;
}

ExactSeries ExactSeries::integrate() const {
  ExactSeries r(order_ + 1);
  for (int n = 0; n <= order_; ++n) r.c_[n + 1] = c_[n] / Rational(n + 1);
  return r;
}

ExactSeries ExactSeries::log() const {
  if (order_ < 0 || c_[0] != Rational(1)) throw std::domain_error("ExactSeries::log: constant term must be 1");
  // log(f) = integral of f'/f
  return (derivative() * inverse()).integrate().truncated(order_);
}

ExactSeries ExactSeries::exp() const {
  if (order_ < 0 || !c_[0].is_zero()) throw std::domain_error("ExactSeries::exp: constant term must be 0");
  ExactSeries r(order_);
  r.c_[0] = Rational(1);
  // (n+1) e_{n+1} = sum_i (i+1) f_{i+1} e_{n-i}
  for (int n = 0; n < order_; ++n) {
    Rational acc(0);
    for (int i = 0; i <= n; ++i) {
      if (i + 1 > order_) break;
      acc += Rational(i + 1) * c_[i + 1] * r.c_[n - i];
    }
    r.c_[n + 1] = acc / Rational(n + 1);
  }
  return r;
}

ExactSeries ExactSeries::shift(int k) const {
  if (k >= 0) {
    ExactSeries r(order_ + k);
    for (int n = 0; n <= order_; ++n) r.c_[n + k] = c_[n];
    return r;
  }
  const int drop = -k;
  if (valuation() < drop) throw std::domain_error("ExactSeries::shift: negative shift below valuation");
  ExactSeries r(order_ - drop);
  for (int n = 0; n <= r.order_; ++n) r.c_[n] = c_[n + drop];
  return r;
}

ExactSeries ExactSeries::truncated(int order) const {
  if (order > order_) throw std::out_of_range("ExactSeries::truncated: cannot extend");
  ExactSeries r(order);
  for (int n = 0; n <= order; ++n) r.c_[n] = c_[n];
  return r;
}

bool ExactSeries::is_zero_through(int order) const {
  if (order > order_) throw std::out_of_range("ExactSeries::is_zero_through: beyond truncation");
  for (int n = 0; n <= order; ++n)
    if (!c_[n].is_zero()) return false;
  return true;
}

}  // namespace countlab

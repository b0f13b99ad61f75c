#pragma once

#include "opcurve/bounds.hpp"
#include "opcurve/error.hpp"
#include "opcurve/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace opcurve {

/// Truncated power series sum_i c_i x^i known modulo x^precision.
///
/// The coefficient type T is a Rational, a Mat or a Vec. A precision of kInf
/// marks an exact polynomial; otherwise exactly `precision` coefficients are
/// stored. Values are immutable after construction.
template <class T>
class XSeries {
 public:
  using value_type = T;

  XSeries(std::vector<T> coeffs, int precision, T zero)
      : coeffs_(std::move(coeffs)), prec_(precision), zero_(std::move(zero)) {
    if (prec_ < 0) prec_ = 0;
    normalize();
  }

  static XSeries constant(const T& c, int precision = kInf) {
    return XSeries({c}, precision, zero_like(c));
  }

  static XSeries monomial(const T& c, int power, int precision = kInf) {
    std::vector<T> v(static_cast<size_t>(power) + 1, zero_like(c));
    v.back() = c;
    return XSeries(std::move(v), precision, zero_like(c));
  }

  static XSeries zero(const T& zero, int precision = kInf) { return XSeries({}, precision, zero); }

  int precision() const { return prec_; }
  bool is_exact() const { return is_pos_inf(prec_); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& zero_value() const { return zero_; }

  /// Coefficient of x^i; reading at or beyond the precision is an error.
  T coeff(int i) const {
    if (i < 0) return zero_;
    if (i >= prec_)
      throw Error(ErrorKind::Precision, "x^" + std::to_string(i) + " is beyond x-precision " +
                                            std::to_string(prec_));
    return static_cast<size_t>(i) < coeffs_.size() ? coeffs_[static_cast<size_t>(i)] : zero_;
  }

  /// Index of the first nonzero coefficient; the precision when none is known.
  int valuation() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
      if (!is_zero(coeffs_[i])) return static_cast<int>(i);
    return prec_;
  }

  bool is_zero_to_precision() const { return valuation() >= prec_; }

  XSeries truncated(int precision) const {
    if (precision >= prec_) return *this;
    std::vector<T> v(coeffs_.begin(),
                     coeffs_.begin() + std::min<size_t>(coeffs_.size(), static_cast<size_t>(std::max(precision, 0))));
    return XSeries(std::move(v), precision, zero_);
  }

  /// d/dx; a truncated series loses one order of precision.
  XSeries derivative() const {
    std::vector<T> v;
    for (size_t i = 1; i < coeffs_.size(); ++i) v.push_back(eval(coeffs_[i] * Rational(static_cast<long>(i))));
    return XSeries(std::move(v), is_exact() ? kInf : prec_ - 1, zero_);
  }

  /// Antiderivative with zero constant term; gains one order of precision.
  XSeries antiderivative() const {
    std::vector<T> v{zero_};
    for (size_t i = 0; i < coeffs_.size(); ++i)
      v.push_back(eval(coeffs_[i] / Rational(static_cast<long>(i + 1))));
    return XSeries(std::move(v), is_exact() ? kInf : prec_ + 1, zero_);
  }

  XSeries operator-() const {
    std::vector<T> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(eval(-c));
    return XSeries(std::move(v), prec_, zero_);
  }

  XSeries operator+(const XSeries& o) const { return combine(o, false); }
  XSeries operator-(const XSeries& o) const { return combine(o, true); }

  XSeries scaled(const Rational& s) const {
    std::vector<T> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(eval(c * s));
    return XSeries(std::move(v), prec_, zero_);
  }

  /// Equality on the common precision.
  bool agrees_with(const XSeries& o) const { return (*this - o).is_zero_to_precision(); }

 private:
  void normalize() {
    if (is_exact()) {
      while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
    } else {
      coeffs_.resize(static_cast<size_t>(prec_), zero_);
    }
  }

  XSeries combine(const XSeries& o, bool subtract) const {
    const int p = std::min(prec_, o.prec_);
    const size_t len = std::max(coeffs_.size(), o.coeffs_.size());
    std::vector<T> v;
    v.reserve(len);
    for (size_t i = 0; i < len; ++i) {
      if (!is_pos_inf(p) && i >= static_cast<size_t>(p)) break;
      const T& a = i < coeffs_.size() ? coeffs_[i] : zero_;
      const T& b = i < o.coeffs_.size() ? o.coeffs_[i] : o.zero_;
      v.push_back(subtract ? eval(a - b) : eval(a + b));
    }
    return XSeries(std::move(v), p, zero_);
  }

  std::vector<T> coeffs_;
  int prec_;
  T zero_;
};

/// Product with the window rule prec(ab) = min(prec a + val b, prec b + val a).
template <class A, class B>
XSeries<product_t<A, B>> operator*(const XSeries<A>& a, const XSeries<B>& b) {
  using R = product_t<A, B>;
  R zero = eval(a.zero_value() * b.zero_value());
  const int va = a.valuation(), vb = b.valuation();
  const int p = std::min(badd(a.precision(), vb), badd(b.precision(), va));
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  size_t len = ca.empty() || cb.empty() ? 0 : ca.size() + cb.size() - 1;
  if (!is_pos_inf(p)) len = std::min(len, static_cast<size_t>(std::max(p, 0)));
  std::vector<R> v(len, zero);
  for (size_t i = 0; i < ca.size() && i < len; ++i) {
    if (is_zero(ca[i])) continue;
    for (size_t j = 0; j < cb.size() && i + j < len; ++j) v[i + j] += ca[i] * cb[j];
  }
  return XSeries<R>(std::move(v), p, std::move(zero));
}

template <class T>
XSeries<T> operator*(const Rational& s, const XSeries<T>& a) {
  return a.scaled(s);
}

/// Multiplicative inverse of a unit. An exact input is expanded to `precision`.
XSeries<Rational> inverse(const XSeries<Rational>& a, int precision);

/// Series with Rational coefficients embedded as c*I_n or lifted entrywise.
XSeries<Mat> scalar_to_matrix(const XSeries<Rational>& a, int n);

}  // namespace opcurve

#pragma once

#include "opcurve/bounds.hpp"
#include "opcurve/error.hpp"
#include "opcurve/scalar.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace opcurve {

/// Truncated Laurent series sum_e c_e z^e.
///
/// Coefficients below `lo()` are exactly zero; coefficients above `hi()` are
/// not known. `hi() == kInf` marks an exact Laurent polynomial. Values are
/// normalized so that the first stored coefficient is nonzero, which makes
/// `lo()` the valuation whenever anything nonzero is known.
template <class T>
class ZLaurent {
 public:
  using value_type = T;

  ZLaurent(int lo, std::vector<T> coeffs, int hi, T zero)
      : lo_(lo), c_(std::move(coeffs)), hi_(hi), zero_(std::move(zero)) {
    normalize();
  }

  static ZLaurent monomial(const T& c, int exponent, int hi = kInf) {
    return ZLaurent(exponent, {c}, hi, zero_like(c));
  }

  static ZLaurent zero(const T& zero, int hi = kInf) { return ZLaurent(0, {}, hi, zero); }

  /// Exact Laurent polynomial from an exponent -> coefficient map.
  static ZLaurent from_map(const std::map<int, T>& terms, const T& zero, int hi = kInf) {
    if (terms.empty()) return ZLaurent::zero(zero, hi);
    const int lo = terms.begin()->first;
    std::vector<T> v(static_cast<size_t>(terms.rbegin()->first - lo + 1), zero);
    for (const auto& [e, c] : terms) v[static_cast<size_t>(e - lo)] = c;
    return ZLaurent(lo, std::move(v), hi, zero);
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool is_exact() const { return is_pos_inf(hi_); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& zero_value() const { return zero_; }

  /// Highest stored exponent (for exact values the last nonzero one).
  int top() const { return c_.empty() ? lo_ - 1 : lo_ + static_cast<int>(c_.size()) - 1; }

  /// Lowest exponent that can be nonzero.
  int valuation() const { return c_.empty() ? (is_exact() ? kInf : badd(hi_, 1)) : lo_; }

  bool is_zero_to_precision() const { return c_.empty(); }

  T coeff(int e) const {
    if (e > hi_)
      throw Error(ErrorKind::Precision, "z^" + std::to_string(e) + " is beyond the guarantee window (hi=" +
                                            std::to_string(hi_) + ")");
    if (e < lo_ || e > top()) return zero_;
    return c_[static_cast<size_t>(e - lo_)];
  }

  ZLaurent truncated(int hi) const {
    if (hi >= hi_) return *this;
    std::vector<T> v;
    for (int e = lo_; e <= std::min(hi, top()); ++e) v.push_back(c_[static_cast<size_t>(e - lo_)]);
    return ZLaurent(lo_, std::move(v), hi, zero_);
  }

  /// Multiplication by z^k.
  ZLaurent shifted(int k) const { return ZLaurent(lo_ + k, c_, badd(hi_, k), zero_); }

  /// z^2 d/dz: the action of x on C((z)).
  ZLaurent z2_derivative() const {
    std::vector<T> v;
    for (int e = lo_; e <= top(); ++e) v.push_back(eval(c_[static_cast<size_t>(e - lo_)] * Rational(e)));
    return ZLaurent(lo_ + 1, std::move(v), badd(hi_, 1), zero_);
  }

  ZLaurent operator-() const {
    std::vector<T> v;
    for (const auto& c : c_) v.push_back(eval(-c));
    return ZLaurent(lo_, std::move(v), hi_, zero_);
  }

  ZLaurent operator+(const ZLaurent& o) const { return combine(o, false); }
  ZLaurent operator-(const ZLaurent& o) const { return combine(o, true); }

  ZLaurent scaled(const Rational& s) const {
    std::vector<T> v;
    for (const auto& c : c_) v.push_back(eval(c * s));
    return ZLaurent(lo_, std::move(v), hi_, zero_);
  }

  /// Apply f to every coefficient (and to the zero prototype).
  template <class F>
  auto map(F f) const -> ZLaurent<decltype(eval(f(std::declval<const T&>())))> {
    using U = decltype(eval(f(std::declval<const T&>())));
    std::vector<U> v;
    for (const auto& c : c_) v.push_back(eval(f(c)));
    return ZLaurent<U>(lo_, std::move(v), hi_, eval(f(zero_)));
  }

  /// Equality on the intersection of the two guarantee windows.
  bool agrees_with(const ZLaurent& o) const { return (*this - o).is_zero_to_precision(); }

 private:
  void normalize() {
    size_t first = 0;
    while (first < c_.size() && is_zero(c_[first])) ++first;
    if (first > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
      lo_ += static_cast<int>(first);
    }
    // Drop anything stored beyond the window.
    if (!is_exact() && !c_.empty() && top() > hi_) {
      const long keep = static_cast<long>(hi_) - lo_ + 1;
      c_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
    }
    if (is_exact()) {
      while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    } else if (!c_.empty()) {
      c_.resize(static_cast<size_t>(hi_ - lo_ + 1), zero_);
    }
    if (c_.empty()) lo_ = is_exact() ? 0 : badd(hi_, 1);
  }

  ZLaurent combine(const ZLaurent& o, bool subtract) const {
    const int hi = std::min(hi_, o.hi_);
    if (c_.empty() && o.c_.empty()) return ZLaurent(0, {}, hi, zero_);
    const int lo = std::min(c_.empty() ? o.lo_ : lo_, o.c_.empty() ? lo_ : o.lo_);
    const int last = std::min(hi, std::max(top(), o.top()));
    std::vector<T> v;
    for (int e = lo; e <= last; ++e) {
      const T a = (e >= lo_ && e <= top()) ? c_[static_cast<size_t>(e - lo_)] : zero_;
      const T b = (e >= o.lo_ && e <= o.top()) ? o.c_[static_cast<size_t>(e - o.lo_)] : o.zero_;
      v.push_back(subtract ? eval(a - b) : eval(a + b));
    }
    return ZLaurent(lo, std::move(v), hi, zero_);
  }

  int lo_;
  std::vector<T> c_;
  int hi_;
  T zero_;
};

/// Product with the window rule hi(ab) = min(hi a + val b, hi b + val a).
template <class A, class B>
ZLaurent<product_t<A, B>> operator*(const ZLaurent<A>& a, const ZLaurent<B>& b) {
  using R = product_t<A, B>;
  R zero = eval(a.zero_value() * b.zero_value());
  const int va = a.valuation(), vb = b.valuation();
  const int hi = std::min(badd(a.hi(), vb), badd(b.hi(), va));
  if (a.coeffs().empty() || b.coeffs().empty()) return ZLaurent<R>(0, {}, hi, zero);
  const int lo = a.lo() + b.lo();
  int last = a.top() + b.top();
  if (!is_pos_inf(hi)) last = std::min(last, hi);
  if (last < lo) return ZLaurent<R>(0, {}, hi, zero);
  std::vector<R> v(static_cast<size_t>(last - lo + 1), zero);
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (size_t i = 0; i < ca.size(); ++i) {
    if (is_zero(ca[i])) continue;
    for (size_t j = 0; j < cb.size() && static_cast<int>(i + j) <= last - lo; ++j) v[i + j] += ca[i] * cb[j];
  }
  return ZLaurent<R>(lo, std::move(v), hi, std::move(zero));
}

using LaurentScalar = ZLaurent<Rational>;
using LaurentMatrix = ZLaurent<Mat>;
using LaurentVector = ZLaurent<Vec>;

/// Pole order: ord(a) = m iff a lies in z^-m C[[z]] but not z^-m+1 C[[z]].
template <class T>
int laurent_ord(const ZLaurent<T>& a) {
  if (a.is_zero_to_precision())
    throw Error(ErrorKind::Precision, "order undetermined at this precision (zero through z^" +
                                          std::to_string(a.hi()) + ")");
  return -a.lo();
}

/// Inverse of a nonzero Laurent series; exact inputs are expanded through z^hi.
LaurentScalar inverse(const LaurentScalar& a, int hi);

/// Entry (i, j) of a matrix-coefficient series.
LaurentScalar entry(const LaurentMatrix& m, int i, int j);
/// Component i of a vector-coefficient series.
LaurentScalar component(const LaurentVector& v, int i);
/// Assemble a matrix series from entries; the common window is the smallest one.
LaurentMatrix from_entries(const std::vector<std::vector<LaurentScalar>>& entries);
LaurentVector from_components(const std::vector<LaurentScalar>& comps);
/// a * I_n
LaurentMatrix scalar_matrix(const LaurentScalar& a, int n);
LaurentScalar trace(const LaurentMatrix& m);
LaurentMatrix identity_series(int n);
/// z^exponent e_i in C((z))^n
LaurentVector standard_column(int n, int i, int exponent);
LaurentVector column(const LaurentMatrix& m, int j);

}  // namespace opcurve

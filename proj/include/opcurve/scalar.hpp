#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace opcurve {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
/// Exact rational; gmp keeps it in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
/// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// m(m-1)...(m-k+1)/k! for any integer m.
Rational binomial(int m, int k);
/// m(m-1)...(m-k+1)
Rational falling(int m, int k);
/// m(m+1)...(m+k-1)
Rational rising(int m, int k);
Rational factorial(int k);

// Coefficient-ring helpers shared by the series templates. A coefficient is a
// Rational, an n x n Mat, or an n-vector Vec.

inline bool is_zero(const Rational& r) { return r.is_zero(); }

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Mat zero_like(const Mat& m) { return Mat::Zero(m.rows(), m.cols()); }
inline Vec zero_like(const Vec& v) { return Vec::Zero(v.rows()); }

inline Rational eval(const Rational& r) { return r; }

template <class Derived>
typename Derived::PlainObject eval(const Eigen::MatrixBase<Derived>& e) {
  return e;
}

inline bool coeff_equal(const Rational& a, const Rational& b) { return a == b; }

template <class A, class B>
bool coeff_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

/// Plain type of the product of two coefficient types.
template <class A, class B>
using product_t = decltype(eval(std::declval<const A&>() * std::declval<const B&>()));

/// Plain type of the sum.
template <class A>
using sum_t = decltype(eval(std::declval<const A&>() + std::declval<const A&>()));

inline Mat identity(int n) { return Mat::Identity(n, n); }

}  // namespace opcurve

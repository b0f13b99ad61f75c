#include "opcurve/chardata.hpp"

#include "opcurve/error.hpp"

#include <sstream>

namespace opcurve {

std::vector<LaurentScalar> char_polynomial(const LaurentMatrix& m) {
  const Mat& z = m.zero_value();
  if (z.rows() != z.cols()) throw Error(ErrorKind::Dimension, "characteristic data of a non-square matrix");
  const int n = static_cast<int>(z.rows());
  // Faddeev-LeVerrier: M_1 = I, a_k = -tr(X M_k)/k, M_{k+1} = X M_k + a_k I.
  std::vector<LaurentScalar> a{LaurentScalar::monomial(Rational(1), 0)};
  LaurentMatrix mk = identity_series(n);
  for (int k = 1; k <= n; ++k) {
    const LaurentMatrix xm = m * mk;
    const LaurentScalar ak = trace(xm).scaled(Rational(-1, k));
    a.push_back(ak);
    mk = xm + scalar_matrix(ak, n);
  }
  return a;
}

std::vector<LaurentScalar> char_coefficients(const LaurentMatrix& m) {
  const auto a = char_polynomial(m);
  std::vector<LaurentScalar> c;
  for (size_t k = 1; k < a.size(); ++k) c.push_back(k % 2 ? -a[k] : a[k]);
  return c;
}

LaurentMatrix evaluate_at(const std::vector<LaurentScalar>& poly, const LaurentMatrix& m) {
  const int n = static_cast<int>(m.zero_value().rows());
  LaurentMatrix acc = LaurentMatrix::zero(Mat::Zero(n, n));
  for (const auto& a : poly) acc = acc * m + scalar_matrix(a, n);  // Horner
  return acc;
}

namespace {

std::string monomial_text(const Rational& c, int e, bool first) {
  std::ostringstream os;
  const bool neg = c < 0;
  const Rational a = neg ? Rational(-c) : c;
  if (first)
    os << (neg ? "-" : "");
  else
    os << (neg ? " - " : " + ");
  if (e == 0) {
    os << to_string(a);
  } else {
    if (a != 1) os << to_string(a) << "*";
    os << "z";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace

std::string format_laurent_terms(const LaurentScalar& a) {
  std::string s;
  bool first = true;
  for (int e = a.lo(); e <= a.top(); ++e) {
    const Rational c = a.coeff(e);
    if (c == 0) continue;
    s += monomial_text(c, e, first);
    first = false;
  }
  return first ? "0" : s;
}

std::string format_laurent(const LaurentScalar& a) {
  std::string s = format_laurent_terms(a);
  if (!a.is_exact()) s += " + O(z^" + std::to_string(a.hi() + 1) + ")";
  return s;
}

std::string format_char_polynomial(const std::vector<LaurentScalar>& poly, const std::string& var) {
  const int n = static_cast<int>(poly.size()) - 1;
  std::string s;
  for (int k = 0; k <= n; ++k) {
    const LaurentScalar& a = poly[static_cast<size_t>(k)];
    if (a.is_zero_to_precision()) continue;
    const int power = n - k;
    std::string tpow = power == 0 ? "" : (power == 1 ? var : var + "^" + std::to_string(power));
    int nonzero = 0, exp = 0;
    Rational c;
    for (int e = a.lo(); e <= a.top(); ++e)
      if (a.coeff(e) != 0) {
        ++nonzero;
        exp = e;
        c = a.coeff(e);
      }
    const bool single = nonzero == 1;
    std::string term;
    bool negative = false;
    if (single) {
      negative = c < 0;
      const Rational m = negative ? Rational(-c) : c;
      std::string coef = format_laurent(LaurentScalar::monomial(m, exp));
      if (tpow.empty())
        term = coef;
      else if (coef == "1")
        term = tpow;
      else
        term = coef + "*" + tpow;
    } else {
      term = "(" + format_laurent_terms(a) + ")" + (tpow.empty() ? "" : "*" + tpow);
    }
    if (s.empty())
      s = (negative ? "-" : "") + term;
    else
      s += (negative ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

std::string format_ideal_generator(const std::vector<LaurentScalar>& coeffs) {
  std::string s = "1";
  for (size_t i = 0; i < coeffs.size(); ++i)
    s += std::string(i % 2 ? " + " : " - ") + "(" + format_laurent_terms(coeffs[i]) + ")";
  return s;
}

}  // namespace opcurve

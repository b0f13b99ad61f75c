#include "opcurve/xseries.hpp"
#include "opcurve/zlaurent.hpp"

namespace opcurve {

XSeries<Rational> inverse(const XSeries<Rational>& a, int precision) {
  const int p = std::min(a.precision(), precision);
  if (p <= 0) throw Error(ErrorKind::Precision, "inverse needs x-precision at least 1");
  const Rational c0 = a.coeff(0);
  if (c0 == 0) throw Error(ErrorKind::NotUnit, "not a unit: constant term is zero");
  const Rational inv0 = 1 / c0;
  std::vector<Rational> b{inv0};
  for (int k = 1; k < p; ++k) {
    Rational acc(0);
    for (int i = 1; i <= k && i < static_cast<int>(a.coeffs().size()); ++i) acc += a.coeffs()[i] * b[k - i];
    b.push_back(-acc * inv0);
  }
  if (a.is_exact() && a.coeffs().size() == 1 && is_pos_inf(precision))
    return XSeries<Rational>(std::move(b), kInf, Rational(0));
  return XSeries<Rational>(std::move(b), p, Rational(0));
}

XSeries<Mat> scalar_to_matrix(const XSeries<Rational>& a, int n) {
  std::vector<Mat> v;
  for (const auto& c : a.coeffs()) v.push_back(c * identity(n));
  return XSeries<Mat>(std::move(v), a.precision(), Mat::Zero(n, n));
}

LaurentScalar inverse(const LaurentScalar& a, int hi) {
  if (a.is_zero_to_precision()) throw Error(ErrorKind::NotUnit, "not a unit: zero to precision");
  const int v = a.lo();
  const auto& c = a.coeffs();
  const Rational inv0 = 1 / c[0];
  if (a.is_exact() && c.size() == 1) return LaurentScalar(-v, {inv0}, kInf, Rational(0));
  // a = z^v u with u a unit of C[[z]] known through z^(a.hi - v); 1/a = z^-v / u.
  int out_hi = std::min(hi, badd(a.hi(), -2 * v));
  if (is_pos_inf(out_hi)) throw Error(ErrorKind::Precision, "inverse needs a finite expansion window");
  const int len = out_hi + v + 1;
  if (len <= 0) return LaurentScalar(0, {}, out_hi, Rational(0));
  std::vector<Rational> b{inv0};
  for (int k = 1; k < len; ++k) {
    Rational acc(0);
    for (int i = 1; i <= k && i < static_cast<int>(c.size()); ++i) acc += c[i] * b[k - i];
    b.push_back(-acc * inv0);
  }
  return LaurentScalar(-v, std::move(b), out_hi, Rational(0));
}

LaurentScalar entry(const LaurentMatrix& m, int i, int j) {
  return m.map([&](const Mat& c) { return Rational(c(i, j)); });
}

LaurentScalar component(const LaurentVector& v, int i) {
  return v.map([&](const Vec& c) { return Rational(c(i)); });
}

namespace {

template <class Out, class Place>
ZLaurent<Out> assemble(const std::vector<LaurentScalar>& parts, const Out& zero, Place place) {
  int lo = kInf, top = -kInf, hi = kInf;
  for (const auto& p : parts) {
    hi = std::min(hi, p.hi());
    if (!p.is_zero_to_precision()) {
      lo = std::min(lo, p.lo());
      top = std::max(top, p.top());
    }
  }
  if (lo > top) return ZLaurent<Out>(0, {}, hi, zero);
  std::vector<Out> v(static_cast<size_t>(top - lo + 1), zero);
  for (size_t k = 0; k < parts.size(); ++k)
    for (int e = parts[k].lo(); e <= parts[k].top(); ++e) place(v[static_cast<size_t>(e - lo)], k, parts[k].coeff(e));
  return ZLaurent<Out>(lo, std::move(v), hi, zero);
}

}  // namespace

LaurentMatrix from_entries(const std::vector<std::vector<LaurentScalar>>& entries) {
  const int rows = static_cast<int>(entries.size());
  const int cols = rows ? static_cast<int>(entries[0].size()) : 0;
  std::vector<LaurentScalar> flat;
  for (const auto& r : entries) {
    if (static_cast<int>(r.size()) != cols) throw Error(ErrorKind::Dimension, "ragged matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return assemble<Mat>(flat, Mat::Zero(rows, cols), [cols](Mat& m, size_t k, const Rational& c) {
    m(static_cast<int>(k) / cols, static_cast<int>(k) % cols) = c;
  });
}

LaurentVector from_components(const std::vector<LaurentScalar>& comps) {
  return assemble<Vec>(comps, Vec::Zero(static_cast<int>(comps.size())),
                       [](Vec& v, size_t k, const Rational& c) { v(static_cast<int>(k)) = c; });
}

LaurentMatrix scalar_matrix(const LaurentScalar& a, int n) {
  return a.map([n](const Rational& c) { return Mat(c * identity(n)); });
}

LaurentScalar trace(const LaurentMatrix& m) {
  return m.map([](const Mat& c) { return Rational(c.trace()); });
}

LaurentMatrix identity_series(int n) { return LaurentMatrix::monomial(identity(n), 0); }

LaurentVector standard_column(int n, int i, int exponent) {
  Vec e = Vec::Zero(n);
  e(i) = 1;
  return LaurentVector::monomial(e, exponent);
}

LaurentVector column(const LaurentMatrix& m, int j) {
  return m.map([j](const Mat& c) { return Vec(c.col(j)); });
}

}  // namespace opcurve

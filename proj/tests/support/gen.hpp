#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed per test.

#include "opcurve/psido.hpp"
#include "opcurve/zlaurent.hpp"

#include <random>

namespace opcurve::testgen {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// p/q with |p| <= bound, 1 <= q <= bound.
  Rational rational(int bound = 9) { return Rational(integer(-bound, bound), integer(1, bound)); }
  Rational nonzero(int bound = 9) {
    Rational r;
    while (r == 0) r = rational(bound);
    return r;
  }

  Mat matrix(int n, int bound = 9) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = coin(0.7) ? rational(bound) : Rational(0);
    return m;
  }

  /// Polynomial coefficient a(x) of degree < len, optionally truncated at `prec`.
  XMat coefficient(int n, int len, int prec = kInf, int bound = 9) {
    std::vector<Mat> cs;
    for (int i = 0; i < len; ++i) cs.push_back(matrix(n, bound));
    return XMat(std::move(cs), prec, Mat::Zero(n, n));
  }

  /// Operator with degrees lo..top and an exact floor.
  MatrixPsiDO op(int n, int lo, int top, int len, int prec = kInf) {
    std::vector<XMat> terms;
    for (int d = lo; d <= top; ++d) terms.push_back(coefficient(n, len, prec));
    return MatrixPsiDO(n, lo, std::move(terms), true);
  }

  /// Differential operator: order `top`, leading coefficient I or random.
  MatrixPsiDO differential(int n, int top, int len, int prec = kInf) { return op(n, 0, top, len, prec); }

  /// I + s_1 d^-1 + ... + s_depth d^-depth with polynomial s_m of degree < len.
  MatrixPsiDO dressing(int n, int depth, int len, int bound = 9) {
    std::vector<XMat> terms;
    for (int d = -depth; d <= -1; ++d) terms.push_back(coefficient(n, len, kInf, bound));
    terms.push_back(XMat::constant(identity(n)));
    return MatrixPsiDO(n, -depth, std::move(terms), true);
  }

  LaurentVector vector(int n, int lo, int hi_exp, int window = kInf) {
    std::vector<Vec> cs;
    for (int e = lo; e <= hi_exp; ++e) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v(i) = coin(0.7) ? rational() : Rational(0);
      cs.push_back(v);
    }
    return LaurentVector(lo, std::move(cs), window, Vec::Zero(n));
  }

  /// Matrix over C[[z]] known through z^hi.
  LaurentMatrix power_series_matrix(int n, int hi) {
    std::vector<Mat> cs;
    for (int e = 0; e <= hi; ++e) cs.push_back(matrix(n));
    return LaurentMatrix(0, std::move(cs), hi, Mat::Zero(n, n));
  }

 private:
  std::mt19937 rng_;
};

}  // namespace opcurve::testgen

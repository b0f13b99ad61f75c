#pragma once

#include "opcurve/xseries.hpp"
#include "opcurve/zlaurent.hpp"

#include <map>
#include <utility>
#include <vector>

namespace opcurve {

using XMat = XSeries<Mat>;

/// Matrix pseudodifferential operator sum_m a_m(x) d^m in left normal form.
///
/// Degrees lo()..top() are stored, each coefficient with its own x-precision.
/// When lo_exact() is true every term below lo() is exactly zero; otherwise
/// those terms are untracked and reading them is an error.
class MatrixPsiDO {
 public:
  MatrixPsiDO(int n, int lo, std::vector<XMat> terms, bool lo_exact);

  static MatrixPsiDO zero(int n);
  static MatrixPsiDO identity(int n);
  /// c d^degree with constant c.
  static MatrixPsiDO monomial(const Mat& c, int degree);
  static MatrixPsiDO term_op(const XMat& a, int degree);
  /// Scalar operator a(x) d^degree lifted to a(x) I_n.
  static MatrixPsiDO scalar(const XSeries<Rational>& a, int degree, int n = 1);
  static MatrixPsiDO from_map(int n, const std::map<int, XMat>& terms, int lo, bool lo_exact);

  int n() const { return n_; }
  int lo() const { return lo_; }
  bool lo_exact() const { return lo_exact_; }
  /// Highest stored degree (lo() - 1 when nothing is stored).
  int top() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  const std::vector<XMat>& terms() const { return terms_; }
  bool is_exact_zero() const { return terms_.empty() && lo_exact_; }

  /// Coefficient of d^degree.
  XMat term(int degree) const;
  /// Largest finite x-precision among stored terms, kInf if all are exact.
  int xprec() const;
  /// Smallest x-precision among stored terms.
  int min_xprec() const;
  /// Highest degree whose coefficient is nonzero to precision; throws on the zero operator.
  int order() const;

  /// Terms below `degree` become untracked; with an exact floor, zeros down to `degree` are kept.
  MatrixPsiDO truncated_below(int degree) const;
  /// Terms above `degree` are discarded (callers use this for zero-to-precision tails).
  MatrixPsiDO dropped_above(int degree) const;
  MatrixPsiDO with_xprec(int precision) const;
  /// Same terms, with everything below lo() declared untracked.
  MatrixPsiDO with_unknown_floor() const;
  /// Replace (or insert) the coefficient of d^degree. Requires exact floor or degree >= lo().
  MatrixPsiDO with_term(int degree, const XMat& a) const;

  MatrixPsiDO operator-() const;
  MatrixPsiDO operator+(const MatrixPsiDO& o) const;
  MatrixPsiDO operator-(const MatrixPsiDO& o) const;
  MatrixPsiDO scaled(const Rational& s) const;

  bool is_zero_to_precision() const;
  /// Equality on the common guarantee window.
  bool agrees_with(const MatrixPsiDO& o) const { return (*this - o).is_zero_to_precision(); }

 private:
  void normalize();

  int n_;
  int lo_;
  std::vector<XMat> terms_;
  bool lo_exact_;
};

/// Where the output of a composition stops being tracked.
///
/// Returns the lowest degree of P o Q that every untracked input quantity
/// leaves alone, or -kInf when nothing is untracked:
///  - unknown terms of P below P.lo reach degrees <= P.lo - 1 + top(Q);
///  - unknown terms of Q below Q.lo reach degrees <= top(P) + Q.lo - 1;
///  - a negative-degree term a d^m of P drags every derivative of b_q in,
///    and b_q^(k) is unknown for k >= prec(b_q), reaching m + q - prec(b_q).
/// Within the tracked range each output coefficient carries the x-precision
/// produced by the series arithmetic: prec(b^(k)) = prec(b) - k and the
/// product rule of XSeries.
int composition_floor(const MatrixPsiDO& p, const MatrixPsiDO& q);

/// P o Q by the generalized Leibniz rule d^m a = sum_k binom(m,k) a^(k) d^(m-k).
/// Degrees below `min_degree` are not computed (they become untracked).
MatrixPsiDO compose(const MatrixPsiDO& p, const MatrixPsiDO& q, int min_degree = -kInf);
MatrixPsiDO power(const MatrixPsiDO& p, int k, int min_degree = -kInf);
MatrixPsiDO commutator(const MatrixPsiDO& p, const MatrixPsiDO& q);

/// (P+, P-): degrees >= 0 and degrees < 0.
std::pair<MatrixPsiDO, MatrixPsiDO> split_plus_minus(const MatrixPsiDO& p);
/// Shape test: the negative part vanishes on the window.
bool is_differential_shape(const MatrixPsiDO& p);

/// Coefficients b_m with P = sum_m d^m b_m(x), stored in a MatrixPsiDO container.
MatrixPsiDO to_right_form(const MatrixPsiDO& p);
/// Inverse of to_right_form.
MatrixPsiDO from_right_form(const MatrixPsiDO& right);

/// rho(P) = sum_m b_m(0) z^-m from the right normal form.
LaurentMatrix rho(const MatrixPsiDO& p);

/// P . v for the left module C((z))^n = (E/Ex)^n: x^l d^m sends z^e to
/// rising(e-m, l) z^(e-m+l).
LaurentVector module_action(const MatrixPsiDO& p, const LaurentVector& v);
/// x . v = z^2 dv/dz.
LaurentVector x_action(const LaurentVector& v);

/// Constant-coefficient operator with rho equal to `a`: z^e becomes d^-e.
MatrixPsiDO constant_operator(const LaurentMatrix& a);
/// True when every x^l coefficient with l >= 1 is zero to precision.
bool has_constant_coefficients(const MatrixPsiDO& p);

/// Checks the dressing shape I + sum_{m>=1} s_m d^-m (degree-0 term equal to I
/// to precision) and returns the operator with that term set to I exactly.
MatrixPsiDO as_dressing(const MatrixPsiDO& s);
bool is_dressing_shape(const MatrixPsiDO& s);

/// S^-1 through d^-depth, degree by degree.
MatrixPsiDO invert_dressing(const MatrixPsiDO& s, int depth);

/// R with leading term I d and R^r = P, through d^-depth.
MatrixPsiDO rth_root(const MatrixPsiDO& p, int r, int depth);

struct OrderMonicity {
  int order;
  bool monic_elliptic;
};
OrderMonicity order_and_monicity(const MatrixPsiDO& p);

/// S in the dressing shape with S^-1 P S = I d^r, P monic of order r.
/// Free integration constants are set to zero.
MatrixPsiDO dress_to_constant(const MatrixPsiDO& p, int depth);

}  // namespace opcurve

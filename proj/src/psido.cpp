#include "opcurve/psido.hpp"

#include "opcurve/error.hpp"

#include <string>

namespace opcurve {

namespace {

XMat zero_term(int n) { return XMat::zero(Mat::Zero(n, n)); }

bool exact_zero(const XMat& a) { return a.is_exact() && a.coeffs().empty(); }

void check_same_n(const MatrixPsiDO& p, const MatrixPsiDO& q) {
  if (p.n() != q.n())
    throw Error(ErrorKind::Dimension,
                "operator sizes differ: " + std::to_string(p.n()) + " vs " + std::to_string(q.n()));
}

// Lazily extended derivative lists b, b', b'', ... for each stored term.
class Derivatives {
 public:
  explicit Derivatives(const MatrixPsiDO& q) {
    for (const auto& t : q.terms()) cache_.push_back({t});
  }
  const XMat& get(size_t index, int k) {
    auto& list = cache_[index];
    while (static_cast<int>(list.size()) <= k) list.push_back(list.back().derivative());
    return list[static_cast<size_t>(k)];
  }

 private:
  std::vector<std::vector<XMat>> cache_;
};

// Largest k with b^(k) possibly nonzero and known: len-1 for exact polynomials, prec-1 otherwise.
int derivative_span(const XMat& b) {
  return b.is_exact() ? static_cast<int>(b.coeffs().size()) - 1 : b.precision() - 1;
}

// Reorders a d^m <-> d^m a. sign = -1 gives left -> right, +1 gives right -> left.
MatrixPsiDO reorder(const MatrixPsiDO& p, int sign) {
  const int n = p.n();
  if (p.is_exact_zero()) return MatrixPsiDO::zero(n);
  int floor = p.lo_exact() ? -kInf : p.lo();
  int span = 0;
  for (int m = p.lo(); m <= p.top(); ++m) {
    const XMat& a = p.term(m);
    if (m < 0 && !a.is_exact()) floor = std::max(floor, m - a.precision() + 1);
    span = std::max(span, derivative_span(a));
  }
  int lo = p.lo() < 0 ? p.lo() - span : 0;
  lo = std::min(lo, p.lo());
  bool exact = true;
  if (floor > -kInf && floor >= lo) {
    lo = floor;
    exact = false;
  }
  const int top = p.top();
  if (top < lo) return MatrixPsiDO(n, lo, {}, exact);
  Derivatives d(p);
  std::vector<XMat> out;
  for (int j = lo; j <= top; ++j) {
    XMat acc = zero_term(n);
    for (int m = std::max(j, p.lo()); m <= top; ++m) {
      const int k = m - j;
      if (m >= 0 && k > m) continue;
      const XMat& dk = d.get(static_cast<size_t>(m - p.lo()), k);
      if (exact_zero(dk)) continue;
      Rational c = binomial(m, k);
      if (sign < 0 && (k % 2)) c = -c;
      acc = acc + dk.scaled(c);
    }
    out.push_back(std::move(acc));
  }
  return MatrixPsiDO(n, lo, std::move(out), exact);
}

}  // namespace

MatrixPsiDO::MatrixPsiDO(int n, int lo, std::vector<XMat> terms, bool lo_exact)
    : n_(n), lo_(lo), terms_(std::move(terms)), lo_exact_(lo_exact) {
  for (const auto& t : terms_)
    if (t.zero_value().rows() != n_ || t.zero_value().cols() != n_)
      throw Error(ErrorKind::Dimension, "operator coefficient has the wrong size");
  normalize();
}

void MatrixPsiDO::normalize() {
  while (!terms_.empty() && exact_zero(terms_.back())) terms_.pop_back();
  while (!terms_.empty()) {
    const XMat& f = terms_.front();
    if (lo_exact_ && exact_zero(f)) {
      terms_.erase(terms_.begin());
      ++lo_;
    } else if (f.precision() == 0) {
      terms_.erase(terms_.begin());
      ++lo_;
      lo_exact_ = false;
    } else {
      break;
    }
  }
  if (terms_.empty() && lo_exact_) lo_ = 0;
}

MatrixPsiDO MatrixPsiDO::zero(int n) { return MatrixPsiDO(n, 0, {}, true); }

MatrixPsiDO MatrixPsiDO::identity(int n) { return monomial(opcurve::identity(n), 0); }

MatrixPsiDO MatrixPsiDO::monomial(const Mat& c, int degree) {
  return MatrixPsiDO(static_cast<int>(c.rows()), degree, {XMat::constant(c)}, true);
}

MatrixPsiDO MatrixPsiDO::term_op(const XMat& a, int degree) {
  return MatrixPsiDO(static_cast<int>(a.zero_value().rows()), degree, {a}, true);
}

MatrixPsiDO MatrixPsiDO::scalar(const XSeries<Rational>& a, int degree, int n) {
  return term_op(scalar_to_matrix(a, n), degree);
}

MatrixPsiDO MatrixPsiDO::from_map(int n, const std::map<int, XMat>& terms, int lo, bool lo_exact) {
  if (terms.empty()) return MatrixPsiDO(n, lo, {}, lo_exact);
  lo = std::min(lo, terms.begin()->first);
  std::vector<XMat> v(static_cast<size_t>(terms.rbegin()->first - lo + 1), zero_term(n));
  for (const auto& [d, a] : terms) v[static_cast<size_t>(d - lo)] = a;
  return MatrixPsiDO(n, lo, std::move(v), lo_exact);
}

XMat MatrixPsiDO::term(int degree) const {
  if (degree > top()) return zero_term(n_);
  if (degree < lo_) {
    if (lo_exact_) return zero_term(n_);
    throw Error(ErrorKind::Precision, "d^" + std::to_string(degree) +
                                          " is below the tracked degree window (lo=" + std::to_string(lo_) + ")");
  }
  return terms_[static_cast<size_t>(degree - lo_)];
}

int MatrixPsiDO::xprec() const {
  int best = -1;
  for (const auto& t : terms_)
    if (!t.is_exact()) best = std::max(best, t.precision());
  return best < 0 ? kInf : best;
}

int MatrixPsiDO::min_xprec() const {
  int best = kInf;
  for (const auto& t : terms_) best = std::min(best, t.precision());
  return best;
}

int MatrixPsiDO::order() const {
  for (int d = top(); d >= lo_; --d)
    if (!term(d).is_zero_to_precision()) return d;
  if (!lo_exact_) throw Error(ErrorKind::Precision, "order undetermined at this precision");
  throw Error(ErrorKind::Domain, "zero operator has no order");
}

MatrixPsiDO MatrixPsiDO::truncated_below(int degree) const {
  if (degree <= -kInf || (degree < lo_ && !lo_exact_)) return *this;
  std::vector<XMat> v;
  for (int d = degree; d <= top(); ++d) v.push_back(term(d));
  return MatrixPsiDO(n_, degree, std::move(v), false);
}

MatrixPsiDO MatrixPsiDO::dropped_above(int degree) const {
  if (degree >= top()) return *this;
  std::vector<XMat> v;
  for (int d = lo_; d <= degree; ++d) v.push_back(term(d));
  return MatrixPsiDO(n_, lo_, std::move(v), lo_exact_);
}

MatrixPsiDO MatrixPsiDO::with_xprec(int precision) const {
  std::vector<XMat> v;
  for (const auto& t : terms_) v.push_back(t.truncated(precision));
  return MatrixPsiDO(n_, lo_, std::move(v), lo_exact_);
}

MatrixPsiDO MatrixPsiDO::with_unknown_floor() const { return MatrixPsiDO(n_, lo_, terms_, false); }

MatrixPsiDO MatrixPsiDO::with_term(int degree, const XMat& a) const {
  if (degree < lo_ && !lo_exact_)
    throw Error(ErrorKind::Precision, "cannot set a term below the tracked degree window");
  const int lo = std::min(lo_, degree);
  const int top = std::max(this->top(), degree);
  std::vector<XMat> v;
  for (int d = lo; d <= top; ++d) v.push_back(d == degree ? a : term(d));
  return MatrixPsiDO(n_, lo, std::move(v), lo_exact_);
}

MatrixPsiDO MatrixPsiDO::operator-() const { return scaled(Rational(-1)); }

MatrixPsiDO MatrixPsiDO::scaled(const Rational& s) const {
  std::vector<XMat> v;
  for (const auto& t : terms_) v.push_back(t.scaled(s));
  return MatrixPsiDO(n_, lo_, std::move(v), lo_exact_);
}

MatrixPsiDO MatrixPsiDO::operator+(const MatrixPsiDO& o) const {
  check_same_n(*this, o);
  bool exact = lo_exact_ && o.lo_exact_;
  int lo;
  if (exact) {
    lo = std::min(lo_, o.lo_);
    if (terms_.empty()) lo = o.lo_;
    if (o.terms_.empty()) lo = terms_.empty() ? 0 : lo_;
  } else {
    lo = -kInf;
    if (!lo_exact_) lo = std::max(lo, lo_);
    if (!o.lo_exact_) lo = std::max(lo, o.lo_);
  }
  const int top = std::max(this->top(), o.top());
  std::vector<XMat> v;
  for (int d = lo; d <= top; ++d) v.push_back(term(d) + o.term(d));
  return MatrixPsiDO(n_, lo, std::move(v), exact);
}

MatrixPsiDO MatrixPsiDO::operator-(const MatrixPsiDO& o) const { return *this + (-o); }

bool MatrixPsiDO::is_zero_to_precision() const {
  for (const auto& t : terms_)
    if (!t.is_zero_to_precision()) return false;
  return true;
}

int composition_floor(const MatrixPsiDO& p, const MatrixPsiDO& q) {
  int floor = -kInf;
  if (!p.lo_exact()) floor = std::max(floor, p.lo() + q.top());
  if (!q.lo_exact()) floor = std::max(floor, p.top() + q.lo());
  const int neg_top = std::min(p.top(), -1);
  if (p.lo() <= -1 && !p.terms().empty()) {
    for (int d = q.lo(); d <= q.top(); ++d) {
      const XMat& b = q.term(d);
      if (!b.is_exact()) floor = std::max(floor, neg_top + d - b.precision() + 1);
    }
  }
  return floor;
}

MatrixPsiDO compose(const MatrixPsiDO& p, const MatrixPsiDO& q, int min_degree) {
  check_same_n(p, q);
  const int n = p.n();
  if (p.is_exact_zero() || q.is_exact_zero()) return MatrixPsiDO::zero(n);

  int span = 0;
  for (const auto& b : q.terms()) span = std::max(span, derivative_span(b));
  int lo = (p.lo() < 0 ? p.lo() - span : 0) + q.lo();
  bool exact = true;
  const int floor = composition_floor(p, q);
  if (floor > -kInf && floor >= lo) {
    lo = floor;
    exact = false;
  }
  if (min_degree > lo) {
    lo = min_degree;
    exact = false;
  }
  const int top = p.top() + q.top();
  if (top < lo) return MatrixPsiDO(n, lo, {}, exact);

  Derivatives d(q);
  std::vector<XMat> out;
  out.reserve(static_cast<size_t>(top - lo + 1));
  for (int j = lo; j <= top; ++j) {
    XMat acc = zero_term(n);
    for (int m = p.lo(); m <= p.top(); ++m) {
      const XMat& a = p.term(m);
      if (exact_zero(a)) continue;
      for (int qd = std::max(q.lo(), j - m); qd <= q.top(); ++qd) {
        const int k = m + qd - j;
        if (m >= 0 && k > m) break;
        const XMat& b = d.get(static_cast<size_t>(qd - q.lo()), k);
        if (exact_zero(b)) continue;
        acc = acc + (a * b).scaled(binomial(m, k));
      }
    }
    out.push_back(std::move(acc));
  }
  return MatrixPsiDO(n, lo, std::move(out), exact);
}

MatrixPsiDO power(const MatrixPsiDO& p, int k, int min_degree) {
  if (k < 0) throw Error(ErrorKind::Domain, "negative operator power");
  if (k == 0) return MatrixPsiDO::identity(p.n());
  MatrixPsiDO r = p.truncated_below(min_degree);
  for (int i = 1; i < k; ++i) r = compose(r, p, min_degree);
  return r;
}

MatrixPsiDO commutator(const MatrixPsiDO& p, const MatrixPsiDO& q) { return compose(p, q) - compose(q, p); }

std::pair<MatrixPsiDO, MatrixPsiDO> split_plus_minus(const MatrixPsiDO& p) {
  const int n = p.n();
  std::vector<XMat> plus, minus;
  for (int d = p.lo(); d <= p.top(); ++d) (d >= 0 ? plus : minus).push_back(p.term(d));
  if (p.lo() >= 0) {
    MatrixPsiDO pp(n, p.lo(), std::move(plus), p.lo_exact());
    MatrixPsiDO pm = p.lo_exact() ? MatrixPsiDO::zero(n) : MatrixPsiDO(n, 0, {}, false);
    return {pp, pm};
  }
  return {MatrixPsiDO(n, 0, std::move(plus), true), MatrixPsiDO(n, p.lo(), std::move(minus), p.lo_exact())};
}

bool is_differential_shape(const MatrixPsiDO& p) { return split_plus_minus(p).second.is_zero_to_precision(); }

MatrixPsiDO to_right_form(const MatrixPsiDO& p) { return reorder(p, -1); }

MatrixPsiDO from_right_form(const MatrixPsiDO& right) { return reorder(right, +1); }

LaurentMatrix rho(const MatrixPsiDO& p) {
  const int n = p.n();
  const MatrixPsiDO r = to_right_form(p);
  int hi = r.lo_exact() ? kInf : -r.lo();
  std::map<int, Mat> coeffs;
  for (int j = r.lo(); j <= r.top(); ++j) {
    const XMat& b = r.term(j);
    if (b.precision() < 1) {
      hi = std::min(hi, -j - 1);
      continue;
    }
    coeffs[-j] = b.coeff(0);
  }
  return LaurentMatrix::from_map(coeffs, Mat::Zero(n, n), hi);
}

LaurentVector module_action(const MatrixPsiDO& p, const LaurentVector& v) {
  const int n = p.n();
  if (v.zero_value().rows() != n) throw Error(ErrorKind::Dimension, "vector size does not match the operator");
  if (p.is_exact_zero()) return LaurentVector::zero(Vec::Zero(n), v.hi());

  int hi = kInf;
  if (!v.is_exact()) hi = std::min(hi, badd(v.hi(), -p.top()));
  if (!p.lo_exact()) hi = std::min(hi, bsub(v.valuation(), p.lo()));
  for (int m = p.lo(); m <= p.top(); ++m) {
    const XMat& a = p.term(m);
    if (a.is_exact()) continue;
    for (int e = v.lo(); e <= v.top(); ++e) {
      if (is_zero(v.coeff(e))) continue;
      const int f = e - m;
      if (f <= 0 && a.precision() >= 1 - f) continue;  // rising(f, l) = 0 for every unknown l
      hi = std::min(hi, f + a.precision() - 1);
    }
  }

  std::map<int, Vec> out;
  for (int m = p.lo(); m <= p.top(); ++m) {
    const XMat& a = p.term(m);
    const auto& ac = a.coeffs();
    for (int e = v.lo(); e <= v.top(); ++e) {
      const Vec ve = v.coeff(e);
      if (is_zero(ve)) continue;
      const int f = e - m;
      for (int l = 0; l < static_cast<int>(ac.size()); ++l) {
        if (f + l > hi) break;
        if (is_zero(ac[static_cast<size_t>(l)])) continue;
        const Rational c = rising(f, l);
        if (c == 0) continue;
        auto it = out.try_emplace(f + l, Vec::Zero(n)).first;
        it->second += c * (ac[static_cast<size_t>(l)] * ve);
      }
    }
  }
  return LaurentVector::from_map(out, Vec::Zero(n), hi);
}

LaurentVector x_action(const LaurentVector& v) { return v.z2_derivative(); }

MatrixPsiDO constant_operator(const LaurentMatrix& a) {
  const int n = static_cast<int>(a.zero_value().rows());
  std::map<int, XMat> terms;
  for (int e = a.lo(); e <= a.top(); ++e) {
    const Mat c = a.coeff(e);
    if (!is_zero(c)) terms.emplace(-e, XMat::constant(c));
  }
  if (a.is_exact()) return MatrixPsiDO::from_map(n, terms, terms.empty() ? 0 : terms.begin()->first, true);
  return MatrixPsiDO::from_map(n, terms, -a.hi(), false);
}

bool has_constant_coefficients(const MatrixPsiDO& p) {
  for (const auto& t : p.terms())
    for (size_t i = 1; i < t.coeffs().size(); ++i)
      if (!is_zero(t.coeffs()[i])) return false;
  return true;
}

bool is_dressing_shape(const MatrixPsiDO& s) {
  for (int d = std::max(1, s.lo()); d <= s.top(); ++d)
    if (!s.term(d).is_zero_to_precision()) return false;
  if (s.lo() > 0 && !s.lo_exact()) return false;
  if (s.lo() > 0) return false;  // degree-0 term is exactly zero
  const XMat a0 = s.term(0);
  return (a0 - XMat::constant(identity(s.n()))).is_zero_to_precision() && a0.precision() >= 1;
}

MatrixPsiDO as_dressing(const MatrixPsiDO& s) {
  if (!is_dressing_shape(s))
    throw Error(ErrorKind::Domain, "not a dressing operator: expected I + sum_{m>=1} s_m(x) Dx^-m");
  return s.dropped_above(0).with_term(0, XMat::constant(identity(s.n())));
}

MatrixPsiDO invert_dressing(const MatrixPsiDO& s_in, int depth) {
  const MatrixPsiDO s = as_dressing(s_in);
  const int n = s.n();
  if (s.lo_exact() && s.lo() == 0) return MatrixPsiDO::identity(n);
  MatrixPsiDO v = MatrixPsiDO::identity(n);
  int done = 0;
  for (int m = 1; m <= depth; ++m) {
    const MatrixPsiDO r = compose(s, v, -m);
    if (-m < r.lo()) break;
    v = v.with_term(-m, -r.term(-m));
    done = -m;
  }
  return v.truncated_below(done);
}

OrderMonicity order_and_monicity(const MatrixPsiDO& p) {
  const int ord = p.order();
  const XMat lead = p.term(ord);
  const bool monic = ord > 0 && (lead - XMat::constant(identity(p.n()))).is_zero_to_precision();
  return {ord, monic};
}

namespace {

MatrixPsiDO require_monic(const MatrixPsiDO& p, int r) {
  const OrderMonicity om = order_and_monicity(p);
  if (!om.monic_elliptic || (r > 0 && om.order != r))
    throw Error(ErrorKind::Domain, "not monic elliptic: leading term must be I_n Dx^" +
                                       std::to_string(r > 0 ? r : om.order));
  return p.dropped_above(om.order).with_term(om.order, XMat::constant(identity(p.n())));
}

}  // namespace

MatrixPsiDO rth_root(const MatrixPsiDO& p_in, int r, int depth) {
  if (r <= 0) throw Error(ErrorKind::Domain, "root index must be positive");
  const MatrixPsiDO p = require_monic(p_in, r);
  const int n = p.n();
  MatrixPsiDO root = MatrixPsiDO::monomial(identity(n), 1);
  int done = 1;
  for (int k = 1; k <= depth + 1; ++k) {
    const int target = r - k;
    if (target < p.lo() && !p.lo_exact()) break;
    const MatrixPsiDO rp = power(root, r, target - r);
    if (target < rp.lo() && !rp.lo_exact()) break;
    const XMat residual = p.term(target) - rp.term(target);
    root = root.with_term(1 - k, residual.scaled(Rational(1, r)));
    done = 1 - k;
  }
  return root.truncated_below(done);
}

MatrixPsiDO dress_to_constant(const MatrixPsiDO& p_in, int depth) {
  const MatrixPsiDO p = require_monic(p_in, 0);
  const int n = p.n();
  const int r = p.top();
  const MatrixPsiDO root = rth_root(p, r, depth);
  if (!root.term(0).is_zero_to_precision())
    throw Error(ErrorKind::Domain,
                "the Dx^" + std::to_string(r - 1) + " coefficient must vanish for a dressing to exist");
  const MatrixPsiDO u = root.dropped_above(-1);
  MatrixPsiDO s = MatrixPsiDO::identity(n);
  int done = 0;
  for (int m = 1; m <= depth; ++m) {
    const MatrixPsiDO t = compose(u, s, -m);
    if (-m < t.lo()) break;
    s = s.with_term(-m, -t.term(-m).antiderivative());
    done = -m;
  }
  return s.truncated_below(done);
}

}  // namespace opcurve

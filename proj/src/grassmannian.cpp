#include "opcurve/grassmannian.hpp"

#include "opcurve/error.hpp"
#include "opcurve/linalg.hpp"

#include <map>
#include <stdexcept>

namespace opcurve {

GrassPoint GrassPoint::base(int n) {
  GrassPoint w;
  w.n = n;
  return w;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Highest exponent at which v is known; for exact vectors, its top (at least 0).
int known_hi(const LaurentVector& v) { return v.is_exact() ? kInf : v.hi(); }

void require_nonpositive_part(const LaurentVector& v, const std::string& what) {
  if (v.hi() < 0)
    throw Error(ErrorKind::Precision, "increase window: " + what + " is only known through z^" +
                                          std::to_string(v.hi()));
}

}  // namespace

Mat gamma_matrix(const GrassPoint& w) {
  const int n = w.n;
  const int rows = w.tail_start;
  Mat m = Mat::Zero(rows, static_cast<int>(w.columns.size()));
  for (size_t j = 0; j < w.columns.size(); ++j) {
    const LaurentVector& col = w.columns[j];
    require_nonpositive_part(col, "frame column " + std::to_string(j));
    for (int e = col.lo(); e <= std::min(0, col.top()); ++e) {
      const Vec c = col.coeff(e);
      for (int i = 0; i < n; ++i) {
        if (c(i).is_zero()) continue;
        const int s = frame_row(n, -e, i);
        if (s < rows)
          m(s, static_cast<int>(j)) = c(i);
        else if (!w.tail_exact)
          throw Error(ErrorKind::Domain, "frame column " + std::to_string(j) +
                                             " reaches past the stored frame; its projection is not determined");
      }
    }
  }
  return m;
}

GammaReport gamma_dims(const GrassPoint& w) {
  GammaReport r;
  r.window_matrix = gamma_matrix(w);
  const int e = static_cast<int>(w.columns.size());
  const int rk = rank(r.window_matrix);
  r.h0 = e - rk;
  r.h1 = w.tail_start - rk;
  if (r.h0 > 0) {
    // Each kernel vector must give an element of W that is visibly nonzero in zC[[z]]^n.
    const Mat ker = nullspace(r.window_matrix);
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
      LaurentVector y = LaurentVector::zero(Vec::Zero(w.n));
      for (int j = 0; j < e; ++j)
        if (!ker(j, k).is_zero()) y = y + w.columns[static_cast<size_t>(j)].scaled(ker(j, k));
      bool nonzero = false;
      for (int x = std::max(1, y.lo()); x <= y.top() && !nonzero; ++x) nonzero = !is_zero(y.coeff(x));
      if (!nonzero) {
        if (y.is_exact()) throw Error(ErrorKind::Domain, "frame columns are linearly dependent");
        throw Error(ErrorKind::Precision, "increase window: a kernel element of gamma_W is zero through z^" +
                                              std::to_string(y.hi()));
      }
    }
  }
  return r;
}

DifferentialReport is_differential_by_action(const MatrixPsiDO& p, int depth) {
  DifferentialReport rep;
  rep.shape = is_differential_shape(p);
  rep.depth = depth;
  const int n = p.n();
  int needed = 0;
  for (int m = p.lo(); m <= std::min(p.top(), -1); ++m) {
    const XMat a = p.term(m);
    const int len = a.is_exact() ? static_cast<int>(a.coeffs().size()) : a.precision();
    if (len > 0) needed = std::max(needed, -m + len - 1);
  }
  rep.needed_weight = needed;
  int certified = depth;
  for (int q = 0; q < depth; ++q) {
    for (int i = 0; i < n; ++i) {
      const LaurentVector y = module_action(p, standard_column(n, i, -q));
      for (int e = std::max(1, y.lo()); e <= y.top(); ++e) {
        if (is_zero(y.coeff(e))) continue;
        rep.action = Verdict::No;
        rep.detail = "Dx-action sends z^" + std::to_string(-q) + " e_" + std::to_string(i) +
                     " to a vector with a nonzero z^" + std::to_string(e) + " component";
        return rep;
      }
      if (!y.is_exact()) certified = std::min(certified, y.hi() + q);
    }
  }
  rep.certified_weight = std::max(0, certified);
  if (rep.certified_weight >= needed) {
    rep.action = Verdict::Yes;
    rep.detail = "C[z^-1]^n is preserved on basis vectors z^-p e_i, p < " + std::to_string(depth) +
                 "; negative part certified through weight " + std::to_string(rep.certified_weight);
  } else {
    rep.action = Verdict::Inconclusive;
    rep.detail = "action certifies weights through " + std::to_string(rep.certified_weight) +
                 " but the operator tracks negative-part weights up to " + std::to_string(needed) +
                 "; increase depth";
  }
  return rep;
}

GrassPoint point_from_dressing(const MatrixPsiDO& s_in, int columns, int inversion_depth) {
  const MatrixPsiDO s = as_dressing(s_in);
  const int n = s.n();
  if (s.lo_exact() && s.lo() == 0) return GrassPoint::base(n);
  const MatrixPsiDO sinv = invert_dressing(s.with_xprec(inversion_depth + 1), inversion_depth);
  GrassPoint w;
  w.n = n;
  w.tail_exact = false;
  // Stop at the first column whose projection to C[z^-1]^n is no longer known.
  int stored = 0;
  for (int q = 0; q < columns; ++q) {
    std::vector<LaurentVector> block;
    for (int i = 0; i < n; ++i) block.push_back(module_action(sinv, standard_column(n, i, -q)));
    bool known = true;
    for (const auto& c : block) known = known && c.hi() >= 0;
    if (!known) break;
    w.columns.insert(w.columns.end(), block.begin(), block.end());
    ++stored;
  }
  if (stored == 0) throw Error(ErrorKind::Precision, "increase window: S^-1 does not determine any frame column");
  w.tail_start = n * stored;
  return w;
}

MatrixPsiDO dressing_from_point(const GrassPoint& w, int depth, int xprec) {
  const GammaReport g = gamma_dims(w);
  if (!g.big_cell())
    throw Error(ErrorKind::NoDressing, "no dressing exists: W is outside the big cell (h0=" + std::to_string(g.h0) +
                                           ", h1=" + std::to_string(g.h1) + ")");
  const int n = w.n;
  if (w.is_base_point()) return MatrixPsiDO::identity(n);
  const int slices = depth + xprec - 1;

  std::vector<LaurentVector> frame = w.columns;
  if (w.tail_exact)
    for (int s = w.tail_start; s < n * slices; ++s) frame.push_back(standard_column(n, s % n, -(s / n)));

  // Coefficient s_{m,l} of x^l d^-m, solved weight slice by weight slice (t = m + l).
  std::map<std::pair<int, int>, Mat> solved;
  int done = 0;
  for (int t = 1; t <= slices; ++t) {
    const int unknowns = t * n * n;
    std::vector<Vec> coeff_rows;
    std::vector<Rational> rhs;
    for (const auto& col : frame) {
      if (col.is_zero_to_precision()) continue;
      const int lv = col.lo();
      const int e = lv + t;
      if (e < 1 || e > known_hi(col)) continue;
      // Known part: w_E + sum over solved weights t' < t.
      Vec known = col.coeff(e);
      for (const auto& [ml, c] : solved) {
        const int tw = ml.first + ml.second;
        const int src = e - tw;
        if (src < lv) continue;
        const Vec ws = col.coeff(src);
        if (is_zero(ws)) continue;
        known += rising(e - ml.second, ml.second) * (c * ws);
      }
      const Vec lead = col.coeff(lv);
      for (int a = 0; a < n; ++a) {
        Vec row = Vec::Zero(unknowns);
        for (int m = 1; m <= t; ++m) {
          const Rational r = rising(e - (t - m), t - m);
          if (r == 0) continue;
          for (int b = 0; b < n; ++b) row(((m - 1) * n + a) * n + b) = r * lead(b);
        }
        coeff_rows.push_back(std::move(row));
        rhs.push_back(-known(a));
      }
    }
    Mat a(static_cast<int>(coeff_rows.size()), unknowns);
    Vec b(static_cast<int>(rhs.size()));
    for (size_t r = 0; r < coeff_rows.size(); ++r) {
      a.row(static_cast<int>(r)) = coeff_rows[r].transpose();
      b(static_cast<int>(r)) = rhs[r];
    }
    if (rank(a) < unknowns) break;
    const auto x = solve(a, b);
    if (!x) throw std::logic_error("dressing solve is inconsistent at a certified big-cell point");
    for (int m = 1; m <= t; ++m) {
      Mat c(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = (*x)(((m - 1) * n + i) * n + j);
      solved.emplace(std::make_pair(m, t - m), std::move(c));
    }
    done = t;
  }
  if (done == 0) throw Error(ErrorKind::Precision, "increase window: the frame does not determine any dressing coefficient");

  std::map<int, XMat> terms;
  terms.emplace(0, XMat::constant(identity(n)));
  int lowest = 0;
  for (int m = 1; m <= depth; ++m) {
    const int prec = std::min(xprec, done - m + 1);
    if (prec <= 0) break;
    std::vector<Mat> cs;
    for (int l = 0; l < prec; ++l) cs.push_back(solved.at({m, l}));
    terms.emplace(-m, XMat(std::move(cs), prec, Mat::Zero(n, n)));
    lowest = -m;
  }
  return MatrixPsiDO::from_map(n, terms, lowest, false);
}

Membership contains(const GrassPoint& w, const LaurentVector& y) {
  Membership out;
  const int n = w.n;
  const int s_rows = w.tail_start;
  if (y.hi() < 0) {
    out.certified = false;
    return out;
  }
  if (!w.tail_exact) {
    for (int e = y.lo(); e <= std::min(0, y.top()); ++e)
      for (int i = 0; i < n; ++i)
        if (!y.coeff(e)(i).is_zero() && frame_row(n, -e, i) >= s_rows) {
          out.certified = false;
          return out;
        }
  }
  int hi = known_hi(y);
  for (const auto& c : w.columns) {
    require_nonpositive_part(c, "frame column");
    hi = std::min(hi, known_hi(c));
  }
  if (is_pos_inf(hi)) {
    hi = std::max(0, y.top());
    for (const auto& c : w.columns) hi = std::max(hi, c.top());
  }
  const int cols = static_cast<int>(w.columns.size());
  const int rows = s_rows + n * std::max(0, hi);
  Mat a = Mat::Zero(rows, cols);
  Vec b = Vec::Zero(rows);
  auto row_of = [&](int e, int i) { return e <= 0 ? frame_row(n, -e, i) : s_rows + (e - 1) * n + i; };
  auto fill = [&](const LaurentVector& v, auto&& put) {
    for (int e = v.lo(); e <= std::min(v.top(), hi); ++e) {
      const Vec c = v.coeff(e);
      for (int i = 0; i < n; ++i) {
        if (c(i).is_zero()) continue;
        if (e <= 0 && frame_row(n, -e, i) >= s_rows) continue;  // absorbed by the standard tail
        put(row_of(e, i), c(i));
      }
    }
  };
  for (int j = 0; j < cols; ++j)
    fill(w.columns[static_cast<size_t>(j)], [&](int r, const Rational& v) { a(r, j) = v; });
  fill(y, [&](int r, const Rational& v) { b(r) = v; });
  const auto x = solve(a, b);
  out.checked_hi = hi;
  if (!x) {
    out.member = false;
    return out;
  }
  out.member = true;
  if (rank(a) < cols) return out;
  // Unique coefficients: keep comparing while every involved series is still known.
  int limit = known_hi(y);
  int tops = y.top();
  for (int j = 0; j < cols; ++j) {
    if ((*x)(j).is_zero()) continue;
    limit = std::min(limit, known_hi(w.columns[static_cast<size_t>(j)]));
    tops = std::max(tops, w.columns[static_cast<size_t>(j)].top());
  }
  if (is_pos_inf(limit)) limit = tops;
  for (int e = hi + 1; e <= limit; ++e) {
    Vec acc = y.coeff(e);
    for (int j = 0; j < cols; ++j)
      if (!(*x)(j).is_zero()) acc -= (*x)(j) * w.columns[static_cast<size_t>(j)].coeff(e);
    out.checked_hi = e;
    if (!is_zero(acc)) {
      out.member = false;
      return out;
    }
  }
  return out;
}

StabilityReport stabilizes(const std::vector<LaurentMatrix>& gens, const GrassPoint& w) {
  StabilityReport rep;
  const int n = w.n;
  for (size_t g = 0; g < gens.size(); ++g) {
    const LaurentMatrix& a = gens[g];
    if (a.zero_value().rows() != n) throw Error(ErrorKind::Dimension, "generator size does not match the frame");
    std::vector<LaurentVector> tests = w.columns;
    if (w.tail_exact) {
      if (!a.is_exact())
        throw Error(ErrorKind::Precision, "generator " + std::to_string(g) +
                                              " must be a Laurent polynomial to test the standard tail");
      const int p0 = w.tail_start / n;
      const int p1 = (w.tail_start + n - 1) / n + std::max(0, a.top());
      for (int p = p0; p <= p1; ++p)
        for (int i = 0; i < n; ++i)
          if (frame_row(n, p, i) >= w.tail_start) tests.push_back(standard_column(n, i, -p));
    }
    for (size_t c = 0; c < tests.size(); ++c) {
      const LaurentVector y = a * tests[c];
      const Membership m = contains(w, y);
      if (!m.certified) {
        ++rep.skipped;
        continue;
      }
      ++rep.tested;
      if (!m.member) {
        rep.holds = false;
        rep.detail = "generator " + std::to_string(g) + " moves frame vector " + std::to_string(c) +
                     " out of W (compared through z^" + std::to_string(m.checked_hi) + ")";
        return rep;
      }
    }
  }
  rep.detail = "A.W in W on " + std::to_string(rep.tested) + " frame products" +
               (rep.skipped ? " (" + std::to_string(rep.skipped) + " beyond the stored frame)" : std::string());
  return rep;
}

bool same_span(const GrassPoint& a, const GrassPoint& b) {
  if (a.n != b.n) return false;
  auto covered = [](const GrassPoint& x, const GrassPoint& y) {
    std::vector<LaurentVector> tests = x.columns;
    if (x.tail_exact)
      for (int s = x.tail_start; s < std::max(x.tail_start, y.tail_start); ++s)
        tests.push_back(standard_column(x.n, s % x.n, -(s / x.n)));
    for (const auto& v : tests) {
      const Membership m = contains(y, v);
      if (m.certified && !m.member) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace opcurve

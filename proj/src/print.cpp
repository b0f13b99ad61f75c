#include "opcurve/print.hpp"

#include <vector>

namespace opcurve {

namespace {

struct Piece {
  bool negative;
  std::string body;
};

std::string join(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0)
      s += pieces[i].negative ? "-" + pieces[i].body : pieces[i].body;
    else
      s += (pieces[i].negative ? " - " : " + ") + pieces[i].body;
  }
  return s;
}

// |c| * var^k, with the sign returned separately.
Piece monomial(const Rational& c, const std::string& var, int k) {
  const bool neg = c < 0;
  const Rational a = neg ? Rational(-c) : c;
  std::string pow = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
  std::string body;
  if (pow.empty())
    body = to_string(a);
  else if (a == 1)
    body = pow;
  else
    body = to_string(a) + "*" + pow;
  return {neg, body};
}

std::vector<Piece> series_pieces(const std::vector<Rational>& coeffs, int lo, const std::string& var) {
  std::vector<Piece> out;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) out.push_back(monomial(coeffs[i], var, lo + static_cast<int>(i)));
  return out;
}

std::string dx_power(int m) { return m == 1 ? "Dx" : "Dx^" + std::to_string(m); }

std::string print_scalar_operator(const MatrixPsiDO& p, int i, int j) {
  std::vector<Piece> pieces;
  for (int m = p.top(); m >= p.lo(); --m) {
    const XMat t = p.term(m);
    std::vector<Rational> cs;
    for (const auto& c : t.coeffs()) cs.push_back(c(i, j));
    auto ps = series_pieces(cs, 0, "x");
    if (ps.empty()) continue;
    if (m == 0) {
      pieces.insert(pieces.end(), ps.begin(), ps.end());
    } else if (ps.size() == 1) {
      Piece q = ps[0];
      q.body = (q.body == "1" ? "" : q.body + "*") + dx_power(m);
      pieces.push_back(q);
    } else {
      pieces.push_back({false, "(" + join(ps) + ")*" + dx_power(m)});
    }
  }
  return join(pieces);
}

}  // namespace

std::string print_xseries(const XSeries<Rational>& a) { return join(series_pieces(a.coeffs(), 0, "x")); }

std::string print_operator(const MatrixPsiDO& p) {
  if (p.n() == 1) return print_scalar_operator(p, 0, 0);
  std::string s = "[";
  for (int i = 0; i < p.n(); ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < p.n(); ++j) s += (j ? "," : "") + print_scalar_operator(p, i, j);
    s += "]";
  }
  return s + "]";
}

std::string print_laurent(const LaurentScalar& a) { return join(series_pieces(a.coeffs(), a.lo(), "z")); }

std::string print_laurent_matrix(const LaurentMatrix& m) {
  const int r = static_cast<int>(m.zero_value().rows()), c = static_cast<int>(m.zero_value().cols());
  if (r == 1 && c == 1) return print_laurent(entry(m, 0, 0));
  std::string s = "[";
  for (int i = 0; i < r; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < c; ++j) s += (j ? "," : "") + print_laurent(entry(m, i, j));
    s += "]";
  }
  return s + "]";
}

std::string print_laurent_vector(const LaurentVector& v) {
  const int r = static_cast<int>(v.zero_value().rows());
  std::string s = "(";
  for (int i = 0; i < r; ++i) s += (i ? ", " : "") + print_laurent(component(v, i));
  return s + ")";
}

std::string describe_window(const MatrixPsiDO& p) {
  const int xp = p.min_xprec();
  std::string s = is_pos_inf(xp) ? "exact coefficients" : "x-prec >= " + std::to_string(xp);
  if (!p.lo_exact()) s += ", degrees >= " + std::to_string(p.lo()) + " tracked";
  return s;
}

}  // namespace opcurve

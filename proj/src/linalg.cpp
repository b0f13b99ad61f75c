#include "opcurve/linalg.hpp"

#include "opcurve/error.hpp"

namespace opcurve {

Echelon rref(Mat m) {
  Echelon out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Rational inv = 1 / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

int rank(const Mat& m) { return rref(m).rank(); }

Mat nullspace(const Mat& m) {
  const Echelon e = rref(m);
  const int cols = static_cast<int>(m.cols());
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : e.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  Mat basis = Mat::Zero(cols, cols - e.rank());
  int k = 0;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    basis(f, k) = 1;
    for (int i = 0; i < e.rank(); ++i) basis(e.pivot_cols[static_cast<size_t>(i)], k) = -e.reduced(i, f);
    ++k;
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::Dimension, "solve: row count mismatch");
  Mat aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const Echelon e = rref(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
  Vec x = Vec::Zero(a.cols());
  for (int i = 0; i < e.rank(); ++i) x(e.pivot_cols[static_cast<size_t>(i)]) = e.reduced(i, a.cols());
  return x;
}

Rational determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Dimension, "determinant of a non-square matrix");
  Mat a = m;
  const Eigen::Index n = a.rows();
  Rational det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Rational f = a(i, c) / a(c, c);
      for (Eigen::Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

LaurentRank laurent_rank(std::vector<std::vector<LaurentScalar>> rows, int expand_hi) {
  LaurentRank out;
  if (rows.empty()) return out;
  const size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Pivot on the entry with the lowest certified valuation; ties go to the first row.
    size_t p = rows.size();
    for (size_t i = r; i < rows.size(); ++i) {
      if (rows[i][c].is_zero_to_precision()) continue;
      if (p == rows.size() || rows[i][c].lo() < rows[p][c].lo()) p = i;
    }
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const LaurentScalar inv = inverse(rows[r][c], expand_hi);
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero_to_precision()) continue;
      const LaurentScalar f = rows[i][c] * inv;
      for (size_t j = c; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
      rows[i][c] = LaurentScalar::zero(Rational(0));
    }
    ++r;
  }
  out.rank = static_cast<int>(r);
  for (size_t i = r; i < rows.size(); ++i)
    for (const auto& e : rows[i]) {
      if (!e.is_exact()) out.certified = false;
      out.window = std::min(out.window, e.hi());
    }
  return out;
}

}  // namespace opcurve

#pragma once

#include "opcurve/scalar.hpp"
#include "opcurve/zlaurent.hpp"

#include <optional>
#include <vector>

namespace opcurve {

/// Reduced row echelon form. Pivots are taken left to right, and within a
/// column the first row with a nonzero entry wins, so results are
/// deterministic.
struct Echelon {
  Mat reduced;
  std::vector<int> pivot_cols;  // pivot column of row i, for i < rank
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

Echelon rref(Mat m);
int rank(const Mat& m);
/// Columns form a basis of {v : m v = 0}.
Mat nullspace(const Mat& m);
/// One solution of a x = b with free variables set to zero; nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);
Rational determinant(const Mat& m);

/// Rank over the field C((z)) of the rows, computed by elimination on
/// windowed Laurent series. `certified` is false when some leftover entry is
/// only zero to precision (so a larger window might raise the rank).
struct LaurentRank {
  int rank = 0;
  bool certified = true;
  int window = kInf;  // smallest guarantee window seen during elimination
};

LaurentRank laurent_rank(std::vector<std::vector<LaurentScalar>> rows, int expand_hi);

}  // namespace opcurve

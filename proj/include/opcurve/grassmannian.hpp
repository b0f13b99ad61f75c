#pragma once

#include "opcurve/psido.hpp"
#include "opcurve/zlaurent.hpp"

#include <string>
#include <vector>

namespace opcurve {

/// Eventually standard frame of a subspace W of C((z))^n.
///
/// Standard column s is z^-p e_i with s = p*n + i. W is spanned by the
/// exceptional `columns` together with the standard columns s >= tail_start.
/// When `tail_exact` is false the frame came from a dressing operator: the
/// columns past tail_start are S^-1 z^-p e_i, equal to the standard ones
/// only up to higher-order terms, and are never read.
struct GrassPoint {
  int n = 1;
  std::vector<LaurentVector> columns;
  int tail_start = 0;
  bool tail_exact = true;

  static GrassPoint base(int n);
  bool is_base_point() const { return columns.empty() && tail_start == 0 && tail_exact; }
};

struct GammaReport {
  int h0 = 0;
  int h1 = 0;
  int index() const { return h0 - h1; }
  bool big_cell() const { return h0 == 0 && h1 == 0; }
  /// Nonpositive-exponent coefficients of the exceptional columns on rows s < tail_start.
  Mat window_matrix;
};

/// Row index of z^-p e_i.
inline int frame_row(int n, int p, int i) { return p * n + i; }

Mat gamma_matrix(const GrassPoint& w);
GammaReport gamma_dims(const GrassPoint& w);

enum class Verdict { Yes, No, Inconclusive };
const char* to_string(Verdict v);

struct DifferentialReport {
  Verdict action = Verdict::Inconclusive;
  bool shape = false;  // split_plus_minus(P).second vanishes to precision
  int depth = 0;
  int certified_weight = 0;  // negative-part weights k + l certified by the action
  int needed_weight = 0;     // largest weight of a tracked negative-part coefficient
  std::string detail;
};

/// Tests P . z^-p e_i for p < depth against C[z^-1]^n.
DifferentialReport is_differential_by_action(const MatrixPsiDO& p, int depth);

/// W = S^-1 C[z^-1]^n, stored as the columns S^-1 z^-p e_i for p < columns.
/// S^-1 is expanded through d^-inversion_depth.
GrassPoint point_from_dressing(const MatrixPsiDO& s, int columns, int inversion_depth);

/// The dressing operator of a big-cell point, through d^-depth and x^(xprec-1).
MatrixPsiDO dressing_from_point(const GrassPoint& w, int depth, int xprec);

struct Membership {
  bool member = false;
  bool certified = true;  // false when y is not known through z^0 or reaches an untracked tail
  int checked_hi = 0;     // highest positive exponent compared
};

/// Whether y lies in W, compared on the guarantee windows.
Membership contains(const GrassPoint& w, const LaurentVector& y);

struct StabilityReport {
  bool holds = true;
  int tested = 0;
  int skipped = 0;  // products that fall outside the stored frame
  std::string detail;
};

/// A . W within W for the given generators.
StabilityReport stabilizes(const std::vector<LaurentMatrix>& gens, const GrassPoint& w);

/// Both frames span the same subspace on the compared windows.
bool same_span(const GrassPoint& a, const GrassPoint& b);

}  // namespace opcurve

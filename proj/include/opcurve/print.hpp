#pragma once

#include "opcurve/psido.hpp"
#include "opcurve/zlaurent.hpp"

#include <string>

namespace opcurve {

// Printers emit text in the expression grammar, so parse(print(v)) gives v back
// on its guarantee window. Truncation orders are not printed.

std::string print_xseries(const XSeries<Rational>& a);
std::string print_operator(const MatrixPsiDO& p);
std::string print_laurent(const LaurentScalar& a);
std::string print_laurent_matrix(const LaurentMatrix& m);
std::string print_laurent_vector(const LaurentVector& v);

/// Precision summary such as "x-prec 12, degrees >= -8 tracked".
std::string describe_window(const MatrixPsiDO& p);

}  // namespace opcurve

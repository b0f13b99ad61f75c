#pragma once

#include "opcurve/zlaurent.hpp"

#include <string>
#include <vector>

namespace opcurve {

/// (c_1, ..., c_n) with c_i = trace(wedge^i M), so that
/// det(tI - M) = t^n - c_1 t^(n-1) + c_2 t^(n-2) - ... + (-1)^n c_n.
std::vector<LaurentScalar> char_coefficients(const LaurentMatrix& m);

/// Coefficients (a_0 = 1, a_1, ..., a_n) of det(tI - M) = sum_k a_k t^(n-k).
std::vector<LaurentScalar> char_polynomial(const LaurentMatrix& m);

/// sum_k a_k M^(n-k); zero to precision by Cayley-Hamilton.
LaurentMatrix evaluate_at(const std::vector<LaurentScalar>& poly, const LaurentMatrix& m);

/// Human-readable Laurent series, e.g. "1 - 2*z^-1 + O(z^5)".
std::string format_laurent(const LaurentScalar& a);
/// The known terms only, without the truncation order.
std::string format_laurent_terms(const LaurentScalar& a);
/// "t^2 - z^-1" style rendering of polynomial coefficients a_0..a_n; truncation orders are omitted.
std::string format_char_polynomial(const std::vector<LaurentScalar>& poly, const std::string& var = "t");
/// "1 - s1 + s2 - ..." with each s_i rendered in parentheses.
std::string format_ideal_generator(const std::vector<LaurentScalar>& coeffs);

}  // namespace opcurve

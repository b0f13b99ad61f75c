#pragma once

// Independent reference computations. None of these call into the library's
// series or operator arithmetic.

#include "opcurve/scalar.hpp"
#include "opcurve/zlaurent.hpp"

#include <map>
#include <vector>

namespace opcurve::oracle {

using Poly = std::vector<Rational>;  // coefficients of x^0, x^1, ...

inline Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(r);
}

inline Poly pscale(const Poly& a, const Rational& c) {
  Poly r = a;
  for (auto& v : r) v *= c;
  return trim(r);
}

inline Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

inline Poly pderiv(const Poly& a) {
  Poly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rational(static_cast<long>(i)));
  return trim(r);
}

/// num / (x+1)^k, exact.
struct RatFun {
  Poly num;
  int k = 0;
};

inline Poly one_plus_x_pow(int k) {
  Poly r{Rational(1)};
  for (int i = 0; i < k; ++i) r = pmul(r, {Rational(1), Rational(1)});
  return r;
}

inline RatFun radd(const RatFun& a, const RatFun& b) {
  const int k = std::max(a.k, b.k);
  return {padd(pmul(a.num, one_plus_x_pow(k - a.k)), pmul(b.num, one_plus_x_pow(k - b.k))), k};
}
inline RatFun rmul(const RatFun& a, const RatFun& b) { return {pmul(a.num, b.num), a.k + b.k}; }
inline RatFun rscale(const RatFun& a, const Rational& c) { return {pscale(a.num, c), a.k}; }
/// (g/(x+1)^k)' = (g'(x+1) - k g)/(x+1)^(k+1)
inline RatFun rderiv(const RatFun& a) {
  return {padd(pmul(pderiv(a.num), {Rational(1), Rational(1)}), pscale(a.num, Rational(-a.k))), a.k + 1};
}
inline bool rzero(const RatFun& a) { return a.num.empty(); }

/// Taylor coefficients at x = 0 through x^(len-1).
inline std::vector<Rational> taylor(const RatFun& a, int len) {
  // (1+x)^-k = sum_j binom(-k, j) x^j = sum_j (-1)^j binom(k+j-1, j) x^j
  std::vector<Rational> inv(static_cast<size_t>(len));
  Rational c(1);
  for (int j = 0; j < len; ++j) {
    inv[static_cast<size_t>(j)] = c;
    c = c * Rational(-(a.k + j), j + 1);
  }
  std::vector<Rational> out(static_cast<size_t>(len));
  for (size_t i = 0; i < a.num.size(); ++i)
    for (size_t j = 0; i + j < static_cast<size_t>(len); ++j) out[i + j] += a.num[i] * inv[j];
  return out;
}

/// Differential operator sum_m c_m(x) d^m with rational-function coefficients.
using RatOp = std::map<int, RatFun>;

inline RatOp op_add(RatOp a, const RatOp& b, const Rational& sb = Rational(1)) {
  for (const auto& [m, c] : b) {
    auto it = a.find(m);
    a[m] = it == a.end() ? rscale(c, sb) : radd(it->second, rscale(c, sb));
  }
  for (auto it = a.begin(); it != a.end();) it = rzero(it->second) ? a.erase(it) : std::next(it);
  return a;
}

/// Leibniz: a d^m o b d^q = sum_k binom(m,k) a b^(k) d^(m+q-k), m >= 0.
inline RatOp op_compose(const RatOp& p, const RatOp& q) {
  RatOp out;
  for (const auto& [m, a] : p)
    for (const auto& [qd, b] : q) {
      RatFun bk = b;
      for (int k = 0; k <= m; ++k) {
        Rational binom(1);
        for (int i = 0; i < k; ++i) binom = binom * Rational(m - i, i + 1);
        out = op_add(out, RatOp{{m + qd - k, rscale(rmul(a, bk), binom)}});
        bk = rderiv(bk);
      }
    }
  return out;
}

/// Determinant by cofactor expansion along the first row.
inline LaurentScalar laplace_det(const std::vector<std::vector<LaurentScalar>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  LaurentScalar acc = LaurentScalar::zero(Rational(0));
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<LaurentScalar>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<LaurentScalar> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    const LaurentScalar term = m[0][j] * laplace_det(minor);
    acc = (j % 2) ? acc - term : acc + term;
  }
  return acc;
}

/// Values below `limit` that are nonnegative combinations of `gens`, by enumeration.
inline std::vector<bool> reachable(const std::vector<int>& gens, int limit) {
  std::vector<bool> ok(static_cast<size_t>(limit) + 1, false);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v > limit || ok[static_cast<size_t>(v)]) continue;
    ok[static_cast<size_t>(v)] = true;
    for (int g : gens) stack.push_back(v + g);
  }
  return ok;
}

}  // namespace opcurve::oracle

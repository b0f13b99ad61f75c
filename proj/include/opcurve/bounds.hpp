#pragma once

#include <algorithm>

namespace opcurve {

/// Sentinel for unbounded degrees, windows and precisions.
inline constexpr int kInf = 1 << 28;

constexpr bool is_pos_inf(int v) { return v >= kInf; }
constexpr bool is_neg_inf(int v) { return v <= -kInf; }
constexpr bool is_finite(int v) { return !is_pos_inf(v) && !is_neg_inf(v); }

/// Infinity-aware addition. A -inf operand dominates: every caller uses -inf for "nothing here".
constexpr int badd(int a, int b) {
  if (is_neg_inf(a) || is_neg_inf(b)) return -kInf;
  if (is_pos_inf(a) || is_pos_inf(b)) return kInf;
  const long long s = static_cast<long long>(a) + b;
  return s >= kInf ? kInf : (s <= -kInf ? -kInf : static_cast<int>(s));
}

constexpr int bneg(int a) { return is_pos_inf(a) ? -kInf : (is_neg_inf(a) ? kInf : -a); }

/// a - b, where subtracting -inf gives +inf.
constexpr int bsub(int a, int b) {
  if (is_neg_inf(b)) return is_neg_inf(a) ? -kInf : kInf;
  if (is_pos_inf(b)) return -kInf;
  return badd(a, -b);
}

}  // namespace opcurve

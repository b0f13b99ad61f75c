#include "opcurve/scalar.hpp"

#include "opcurve/error.hpp"

#include <cctype>

namespace opcurve {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precision: return "precision";
    case ErrorKind::NotUnit: return "not_unit";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::NoDressing: return "no_dressing";
    case ErrorKind::NotModule: return "not_module";
    case ErrorKind::NotCommutative: return "not_commutative";
    case ErrorKind::Certification: return "certification";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Type: return "type";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorKind::Syntax, "malformed rational '" + std::string(text) + "'");
  Integer p{std::string(num)};
  const Integer q{std::string(den)};
  if (q == 0) throw Error(ErrorKind::Domain, "zero denominator in '" + std::string(text) + "'");
  if (negative) p = -p;
  return Rational(p, q);
}

Rational falling(int m, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= Rational(m - i);
  return r;
}

Rational rising(int m, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= Rational(m + i);
  return r;
}

Rational factorial(int k) { return falling(k, k); }

Rational binomial(int m, int k) {
  if (k < 0) return Rational(0);
  return falling(m, k) / factorial(k);
}

}  // namespace opcurve

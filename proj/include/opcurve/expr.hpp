#pragma once

#include "opcurve/context.hpp"
#include "opcurve/psido.hpp"
#include "opcurve/zlaurent.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace opcurve {

/// Parse tree. Positions are 1-based.
struct Expr {
  enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow, Matrix };
  Kind kind = Kind::Number;
  Rational number;     // Number
  std::string name;    // Symbol
  int exponent = 0;    // Pow
  int rows = 0;        // Matrix, entries row-major in args
  int cols = 0;
  std::vector<Expr> args;
  int line = 1;
  int column = 1;
};

Expr parse(const std::string& text);

/// Elaborated values. Scalars are 1x1; Laurent and operator values carry their size.
using Value = std::variant<Rational, XSeries<Rational>, LaurentMatrix, MatrixPsiDO, Mat>;
using Env = std::map<std::string, Value>;

const char* kind_name(const Value& v);
int value_size(const Value& v);

/// Polynomials in x and z stay exact; inverses are expanded to ctx.xprec and ctx.z_hi.
Value elaborate(const Expr& e, const Context& ctx, const Env& env = {});
Value evaluate(const std::string& text, const Context& ctx, const Env& env = {});

std::string print_value(const Value& v);

MatrixPsiDO as_operator(const Value& v);
LaurentMatrix as_laurent(const Value& v);
/// Lift a 1x1 operator to a I_n.
MatrixPsiDO lift_operator(const MatrixPsiDO& p, int n);

}  // namespace opcurve

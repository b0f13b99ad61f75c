#include "opcurve/expr.hpp"

#include "opcurve/error.hpp"
#include "opcurve/print.hpp"

#include <algorithm>
#include <cctype>

namespace opcurve {

namespace {

// ---- lexer ----

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

[[noreturn]] void syntax_error(int line, int column, const std::string& msg) {
  throw Error(ErrorKind::Syntax, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l0 = line, c0 = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, s.substr(i, j - i), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), l0, c0});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      default: syntax_error(l0, c0, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), l0, c0});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---- parser ----
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' ['-'] INT | '^' '(' ['-'] INT ')')?
//   atom  := INT | IDENT | '(' expr ')' | '[' row (',' row)* ']'
//   row   := '[' expr (',' expr)* ']'

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("expected an operator or end of input, found " + describe(peek()));
    return e;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  Token take() { return t_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { syntax_error(peek().line, peek().column, msg); }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) fail("expected " + what + ", found " + describe(peek()));
  }

  static Expr node(Expr::Kind k, const Token& at) {
    Expr e;
    e.kind = k;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = take();
      Expr e = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op);
      e.args = {std::move(lhs), term()};
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = take();
      Expr e = node(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, op);
      e.args = {std::move(lhs), unary()};
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr unary() {
    if (peek().kind == Tok::Minus) {
      const Token op = take();
      Expr e = node(Expr::Kind::Neg, op);
      e.args = {unary()};
      return e;
    }
    return power();
  }

  int exponent() {
    const bool paren = accept(Tok::LParen);
    const bool neg = accept(Tok::Minus);
    if (peek().kind != Tok::Number) fail("expected an integer exponent, found " + describe(peek()));
    const Token n = take();
    if (n.text.size() > 6) syntax_error(n.line, n.column, "exponent too large");
    if (paren) expect(Tok::RParen, "')'");
    const int v = std::stoi(n.text);
    return neg ? -v : v;
  }

  Expr power() {
    Expr base = atom();
    if (peek().kind != Tok::Caret) return base;
    const Token op = take();
    Expr e = node(Expr::Kind::Pow, op);
    e.exponent = exponent();
    e.args = {std::move(base)};
    if (peek().kind == Tok::Caret) fail("chained '^' is ambiguous; use parentheses");
    return e;
  }

  Expr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        Expr e = node(Expr::Kind::Number, t);
        e.number = parse_rational(t.text);
        return e;
      }
      case Tok::Ident: {
        take();
        Expr e = node(Expr::Kind::Symbol, t);
        e.name = t.text;
        return e;
      }
      case Tok::LParen: {
        take();
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBracket: return matrix();
      default: fail("expected a number, name, '(' or '[', found " + describe(t));
    }
  }

  Expr matrix() {
    const Token open = take();
    Expr m = node(Expr::Kind::Matrix, open);
    do {
      expect(Tok::LBracket, "'[' to start a matrix row");
      int cols = 0;
      do {
        m.args.push_back(expr());
        ++cols;
      } while (accept(Tok::Comma));
      expect(Tok::RBracket, "',' or ']'");
      if (m.rows == 0)
        m.cols = cols;
      else if (cols != m.cols)
        syntax_error(open.line, open.column, "matrix rows have different lengths");
      ++m.rows;
    } while (accept(Tok::Comma));
    expect(Tok::RBracket, "',' or ']' to close the matrix");
    if (m.rows != m.cols) syntax_error(open.line, open.column, "matrix must be square");
    return m;
  }

  std::vector<Token> t_;
  size_t pos_ = 0;
};

// ---- values ----

enum K { S = 0, X = 1, L = 2, O = 3, M = 4 };

K kind_of(const Value& v) { return static_cast<K>(v.index()); }

K join(K a, K b) {
  if ((a == L && (b == X || b == O)) || (b == L && (a == X || a == O)))
    throw Error(ErrorKind::Type, "cannot combine a z-series with x or Dx");
  if (a == b) return a;
  if (a == S) return b;
  if (b == S) return a;
  if (a == L || b == L) return L;
  return O;  // {X,O}, {X,M}, {O,M}
}

LaurentMatrix laurent_1x1(const LaurentScalar& a) { return from_entries({{a}}); }

Value convert(const Value& v, K k, int n) {
  switch (kind_of(v)) {
    case S: {
      const Rational c = std::get<Rational>(v);
      switch (k) {
        case S: return c;
        case X: return XSeries<Rational>::constant(c);
        case L: return LaurentMatrix::monomial(Mat(identity(n) * c), 0);
        case O: return MatrixPsiDO::scalar(XSeries<Rational>::constant(c), 0, n);
        case M: return Mat(identity(n) * c);
      }
      break;
    }
    case X:
      if (k == X) return v;
      return MatrixPsiDO::scalar(std::get<XSeries<Rational>>(v), 0, n);
    case L: {
      const auto& a = std::get<LaurentMatrix>(v);
      if (a.zero_value().rows() == n) return a;
      return scalar_matrix(entry(a, 0, 0), n);
    }
    case O: return lift_operator(std::get<MatrixPsiDO>(v), n);
    case M: {
      const Mat a = std::get<Mat>(v).rows() == n ? std::get<Mat>(v) : Mat(identity(n) * std::get<Mat>(v)(0, 0));
      if (k == M) return a;
      if (k == L) return LaurentMatrix::monomial(a, 0);
      return MatrixPsiDO::monomial(a, 0);
    }
  }
  throw Error(ErrorKind::Type, "unsupported conversion");
}

int common_size(const Value& a, const Value& b) {
  const int na = value_size(a), nb = value_size(b);
  if (na > 1 && nb > 1 && na != nb)
    throw Error(ErrorKind::Dimension, "size mismatch: " + std::to_string(na) + " vs " + std::to_string(nb));
  return std::max(na, nb);
}

template <class F>
Value binary(const Value& a, const Value& b, F&& f) {
  const K k = join(kind_of(a), kind_of(b));
  const int n = common_size(a, b);
  const Value ca = convert(a, k, n), cb = convert(b, k, n);
  switch (k) {
    case S: return f(std::get<Rational>(ca), std::get<Rational>(cb));
    case X: return f(std::get<XSeries<Rational>>(ca), std::get<XSeries<Rational>>(cb));
    case L: return f(std::get<LaurentMatrix>(ca), std::get<LaurentMatrix>(cb));
    case O: return f(std::get<MatrixPsiDO>(ca), std::get<MatrixPsiDO>(cb));
    case M: return f(std::get<Mat>(ca), std::get<Mat>(cb));
  }
  throw Error(ErrorKind::Type, "unsupported operands");
}

Value add(const Value& a, const Value& b) {
  return binary(a, b, [](const auto& x, const auto& y) -> Value { return x + y; });
}
Value sub(const Value& a, const Value& b) {
  return binary(a, b, [](const auto& x, const auto& y) -> Value { return x - y; });
}

Value mul(const Value& a, const Value& b) {
  return binary(a, b, [](const auto& x, const auto& y) -> Value {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, MatrixPsiDO>)
      return compose(x, y);
    else if constexpr (std::is_same_v<T, Mat>)
      return Mat(x * y);
    else
      return x * y;
  });
}

Value neg(const Value& v) {
  switch (kind_of(v)) {
    case S: return Rational(-std::get<Rational>(v));
    case X: return std::get<XSeries<Rational>>(v).scaled(Rational(-1));
    case L: return std::get<LaurentMatrix>(v).scaled(Rational(-1));
    case O: return -std::get<MatrixPsiDO>(v);
    case M: return Mat(-std::get<Mat>(v));
  }
  return v;
}

Value reciprocal(const Value& v, const Context& ctx) {
  switch (kind_of(v)) {
    case S: {
      const Rational c = std::get<Rational>(v);
      if (c == 0) throw Error(ErrorKind::NotUnit, "not a unit: division by zero");
      return Rational(1 / c);
    }
    case X: return inverse(std::get<XSeries<Rational>>(v), ctx.xprec);
    case L:
      if (value_size(v) == 1) return laurent_1x1(inverse(entry(std::get<LaurentMatrix>(v), 0, 0), ctx.z_hi));
      break;
    default: break;
  }
  throw Error(ErrorKind::Type, std::string("cannot divide by ") + kind_name(v));
}

Value one_like(const Value& v) { return convert(Rational(1), kind_of(v), value_size(v)); }

Value raise(const Value& v, int k, const Context& ctx) {
  if (k < 0 && kind_of(v) == O) {
    const auto& p = std::get<MatrixPsiDO>(v);
    const bool monomial = p.lo_exact() && p.lo() == p.top() && p.term(p.lo()).is_exact() &&
                          p.term(p.lo()).coeffs().size() == 1 && p.term(p.lo()).coeff(0) == identity(p.n());
    if (!monomial) throw Error(ErrorKind::Type, "negative powers of an operator are defined for Dx^m only");
    return MatrixPsiDO::monomial(identity(p.n()), p.lo() * k);
  }
  Value base = k < 0 ? reciprocal(v, ctx) : v;
  Value out = one_like(base);
  for (int i = 0; i < std::abs(k); ++i) out = mul(out, base);
  return out;
}

Value symbol(const std::string& name, const Env& env) {
  if (auto it = env.find(name); it != env.end()) return it->second;
  if (name == "x") return XSeries<Rational>::monomial(Rational(1), 1);
  if (name == "Dx") return MatrixPsiDO::monomial(identity(1), 1);
  if (name == "z") return LaurentMatrix::monomial(identity(1), 1);
  throw Error(ErrorKind::Syntax, "unknown name '" + name + "'");
}

MatrixPsiDO assemble_operator(const std::vector<MatrixPsiDO>& entries, int n) {
  int lo = kInf, top = -kInf, floor = -kInf;
  for (const auto& e : entries) {
    if (e.is_exact_zero()) continue;
    lo = std::min(lo, e.lo());
    top = std::max(top, e.top());
    if (!e.lo_exact()) floor = std::max(floor, e.lo());
  }
  if (lo > top && floor == -kInf) return MatrixPsiDO::zero(n);
  const bool exact = floor == -kInf;
  if (!exact) lo = floor;
  std::vector<XMat> terms;
  for (int d = lo; d <= top; ++d) {
    int prec = kInf;
    size_t len = 0;
    for (const auto& e : entries) {
      const XMat t = e.term(d);
      prec = std::min(prec, t.precision());
      len = std::max(len, t.coeffs().size());
    }
    if (!is_pos_inf(prec)) len = std::min(len, static_cast<size_t>(prec));
    std::vector<Mat> cs(len, Mat::Zero(n, n));
    for (size_t k = 0; k < entries.size(); ++k) {
      const XMat t = entries[k].term(d);
      for (size_t i = 0; i < len; ++i)
        cs[i](static_cast<int>(k) / n, static_cast<int>(k) % n) = t.coeff(static_cast<int>(i))(0, 0);
    }
    terms.emplace_back(std::move(cs), prec, Mat::Zero(n, n));
  }
  return MatrixPsiDO(n, lo, std::move(terms), exact);
}

Value matrix_value(const std::vector<Value>& entries, int n) {
  K k = S;
  for (const auto& v : entries) {
    if (value_size(v) != 1) throw Error(ErrorKind::Dimension, "matrix entries must be scalars");
    k = join(k, kind_of(v));
  }
  if (k == M) throw Error(ErrorKind::Dimension, "matrix entries must be scalars");
  switch (k) {
    case S: {
      Mat m(n, n);
      for (int i = 0; i < n * n; ++i) m(i / n, i % n) = std::get<Rational>(entries[static_cast<size_t>(i)]);
      return m;
    }
    case L: {
      std::vector<std::vector<LaurentScalar>> rows(static_cast<size_t>(n));
      for (int i = 0; i < n * n; ++i)
        rows[static_cast<size_t>(i / n)].push_back(
            entry(std::get<LaurentMatrix>(convert(entries[static_cast<size_t>(i)], L, 1)), 0, 0));
      return from_entries(rows);
    }
    default: {
      std::vector<MatrixPsiDO> ops;
      for (const auto& v : entries) ops.push_back(as_operator(v));
      return assemble_operator(ops, n);
    }
  }
}

}  // namespace

Expr parse(const std::string& text) { return Parser(lex(text)).parse_all(); }

const char* kind_name(const Value& v) {
  switch (kind_of(v)) {
    case S: return "scalar";
    case X: return "x-series";
    case L: return value_size(v) == 1 ? "z-series" : "z-series matrix";
    case O: return "operator";
    case M: return "matrix";
  }
  return "value";
}

int value_size(const Value& v) {
  switch (kind_of(v)) {
    case L: return static_cast<int>(std::get<LaurentMatrix>(v).zero_value().rows());
    case O: return std::get<MatrixPsiDO>(v).n();
    case M: return static_cast<int>(std::get<Mat>(v).rows());
    default: return 1;
  }
}

MatrixPsiDO lift_operator(const MatrixPsiDO& p, int n) {
  if (p.n() == n) return p;
  if (p.n() != 1) throw Error(ErrorKind::Dimension, "cannot lift a " + std::to_string(p.n()) + "x" +
                                                        std::to_string(p.n()) + " operator to size " + std::to_string(n));
  std::vector<XMat> terms;
  for (const auto& t : p.terms()) {
    std::vector<Rational> cs;
    for (const auto& c : t.coeffs()) cs.push_back(c(0, 0));
    terms.push_back(scalar_to_matrix(XSeries<Rational>(cs, t.precision(), Rational(0)), n));
  }
  return MatrixPsiDO(n, p.lo(), std::move(terms), p.lo_exact());
}

MatrixPsiDO as_operator(const Value& v) {
  if (kind_of(v) == L) throw Error(ErrorKind::Type, "expected an operator, got a z-series");
  return std::get<MatrixPsiDO>(convert(v, O, value_size(v)));
}

LaurentMatrix as_laurent(const Value& v) {
  if (kind_of(v) == X || kind_of(v) == O)
    throw Error(ErrorKind::Type, std::string("expected a z-series, got ") + kind_name(v));
  return std::get<LaurentMatrix>(convert(v, L, value_size(v)));
}

Value elaborate(const Expr& e, const Context& ctx, const Env& env) {
  try {
    switch (e.kind) {
      case Expr::Kind::Number: return e.number;
      case Expr::Kind::Symbol: return symbol(e.name, env);
      case Expr::Kind::Add: return add(elaborate(e.args[0], ctx, env), elaborate(e.args[1], ctx, env));
      case Expr::Kind::Sub: return sub(elaborate(e.args[0], ctx, env), elaborate(e.args[1], ctx, env));
      case Expr::Kind::Mul: return mul(elaborate(e.args[0], ctx, env), elaborate(e.args[1], ctx, env));
      case Expr::Kind::Div:
        return mul(elaborate(e.args[0], ctx, env), reciprocal(elaborate(e.args[1], ctx, env), ctx));
      case Expr::Kind::Neg: return neg(elaborate(e.args[0], ctx, env));
      case Expr::Kind::Pow: return raise(elaborate(e.args[0], ctx, env), e.exponent, ctx);
      case Expr::Kind::Matrix: {
        std::vector<Value> vals;
        for (const auto& a : e.args) vals.push_back(elaborate(a, ctx, env));
        return matrix_value(vals, e.rows);
      }
    }
  } catch (const Error& err) {
    const std::string msg = err.what();
    if (msg.rfind("line ", 0) == 0) throw;
    throw Error(err.kind(), "line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + msg);
  }
  throw Error(ErrorKind::Syntax, "unknown expression node");
}

Value evaluate(const std::string& text, const Context& ctx, const Env& env) { return elaborate(parse(text), ctx, env); }

std::string print_value(const Value& v) {
  switch (kind_of(v)) {
    case S: return to_string(std::get<Rational>(v));
    case X: return print_xseries(std::get<XSeries<Rational>>(v));
    case L: return print_laurent_matrix(std::get<LaurentMatrix>(v));
    case O: return print_operator(std::get<MatrixPsiDO>(v));
    case M: {
      const Mat& m = std::get<Mat>(v);
      std::string s = "[";
      for (int i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
        s += "]";
      }
      return s + "]";
    }
  }
  return "";
}

}  // namespace opcurve

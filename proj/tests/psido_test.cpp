#include "doctest.h"
#include "opcurve/error.hpp"
#include "opcurve/psido.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace opcurve;

namespace {
MatrixPsiDO dx(int k, int n = 1) { return MatrixPsiDO::monomial(identity(n), k); }
MatrixPsiDO xop(int n = 1) { return MatrixPsiDO::scalar(XSeries<Rational>::monomial(Rational(1), 1), 0, n); }
}  // namespace

TEST_CASE("Leibniz rule for Dx and x") {
  CHECK(commutator(dx(1), xop()).agrees_with(MatrixPsiDO::identity(1)));
  // Dx^-1 x = x Dx^-1 - Dx^-2
  const MatrixPsiDO want = compose(xop(), dx(-1)) - dx(-2);
  CHECK(compose(dx(-1), xop()).agrees_with(want));
  CHECK(compose(dx(-1), xop()).lo_exact());
}

TEST_CASE("composition is associative on random operators") {
  testgen::Gen g(11);
  for (int t = 0; t < 40; ++t) {
    const int n = g.integer(1, 2);
    const int prec = g.coin(0.4) ? g.integer(5, 9) : kInf;
    const auto p = g.op(n, g.integer(-2, 0), g.integer(0, 2), 3, prec);
    const auto q = g.op(n, g.integer(-2, 0), g.integer(0, 2), 3, prec);
    const auto r = g.op(n, g.integer(-2, 0), g.integer(0, 2), 3, prec);
    CHECK(compose(compose(p, q), r).agrees_with(compose(p, compose(q, r))));
  }
}

TEST_CASE("truncated inputs never claim wrong coefficients") {
  testgen::Gen g(12);
  for (int t = 0; t < 40; ++t) {
    const int n = g.integer(1, 2);
    const auto p = g.op(n, -3, g.integer(0, 2), 4);
    const auto q = g.op(n, -3, g.integer(0, 2), 4);
    const auto exact = compose(p, q);
    const auto pt = p.with_xprec(g.integer(2, 6)).truncated_below(g.integer(-3, 0));
    const auto qt = q.with_xprec(g.integer(2, 6)).truncated_below(g.integer(-3, 0));
    const auto approx = compose(pt, qt);
    CHECK(approx.agrees_with(exact));
    CHECK_FALSE(approx.lo_exact());
    CHECK(approx.min_xprec() >= 0);
  }
}

TEST_CASE("truncated_below keeps the window honest") {
  const auto p = dx(2) + dx(-3);
  const auto cut = p.truncated_below(-1);
  CHECK(cut.lo() == -1);
  CHECK_FALSE(cut.lo_exact());
  const auto pad = dx(2).truncated_below(-2);
  CHECK(pad.lo() == -2);
  CHECK(pad.term(-2).is_zero_to_precision());
  CHECK(dx(2).truncated_below(-kInf).lo_exact());
}

TEST_CASE("split into differential and negative parts") {
  testgen::Gen g(13);
  const auto p = g.op(2, -3, 2, 3);
  const auto [plus, minus] = split_plus_minus(p);
  CHECK(is_differential_shape(plus));
  CHECK(minus.top() < 0);
  CHECK((plus + minus).agrees_with(p));
}

TEST_CASE("dressing inverse round trip") {
  testgen::Gen g(14);
  for (int t = 0; t < 20; ++t) {
    const int n = g.integer(1, 2);
    const auto s = g.dressing(n, 3, 4);
    const auto si = invert_dressing(s, 6);
    const auto one = compose(s, si, -6);
    CHECK(one.agrees_with(MatrixPsiDO::identity(n)));
    CHECK(one.lo() <= -6);
  }
}

TEST_CASE("r-th root of a random monic power") {
  testgen::Gen g(15);
  for (int r = 2; r <= 3; ++r)
    for (int t = 0; t < 6; ++t) {
      auto l = dx(1) + g.op(1, -2, -1, 4);
      const auto p = power(l, r, -6);
      const auto root = rth_root(p, r, 6);
      CHECK(power(root, r, -6).agrees_with(p));
      CHECK(root.agrees_with(l.truncated_below(-6)));
    }
}

TEST_CASE("rth_root rejects non-monic input") {
  CHECK_THROWS_AS(rth_root(dx(2).scaled(Rational(2)), 2, 4), Error);
}

TEST_CASE("module action axioms") {
  testgen::Gen g(16);
  for (int t = 0; t < 30; ++t) {
    const int n = g.integer(1, 2);
    const auto p = g.op(n, -2, 2, 3);
    const auto q = g.op(n, -2, 2, 3);
    const auto v = g.vector(n, -5, 3);
    CHECK(module_action(compose(p, q), v).agrees_with(module_action(p, module_action(q, v))));
    CHECK(module_action(p + q, v).agrees_with(module_action(p, v) + module_action(q, v)));
  }
  const auto v = LaurentVector::monomial(Vec::Ones(1), -3);
  CHECK(x_action(v).agrees_with(module_action(xop(), v)));
}

TEST_CASE("rho of a constant-coefficient operator") {
  // Dx acts as z^-1
  const LaurentMatrix r = rho(dx(1) + dx(-1));
  CHECK(r.coeff(-1)(0, 0) == 1);
  CHECK(r.coeff(1)(0, 0) == 1);
  CHECK(has_constant_coefficients(dx(3)));
  CHECK_FALSE(has_constant_coefficients(xop()));
}

TEST_CASE("dress_to_constant on the cusp P") {
  const MatrixPsiDO u = MatrixPsiDO::term_op(
      scalar_to_matrix(XSeries<Rational>(oracle::taylor({{Rational(-2)}, 2}, 12), 12, Rational(0)), 1), 0);
  const auto p = dx(2) + u;
  const auto s = dress_to_constant(p, 6);
  CHECK(is_dressing_shape(s));
  const auto back = compose(compose(invert_dressing(s, 6), p), s);
  CHECK(back.agrees_with(dx(2)));
}

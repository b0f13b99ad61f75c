#include "doctest.h"
#include "opcurve/error.hpp"
#include "opcurve/grassmannian.hpp"
#include "support/gen.hpp"

using namespace opcurve;

namespace {
LaurentVector scalar_vec(const std::map<int, Rational>& terms) {
  std::map<int, Vec> m;
  for (const auto& [e, c] : terms) m[e] = Vec::Constant(1, c);
  return LaurentVector::from_map(m, Vec::Zero(1));
}
}  // namespace

TEST_CASE("base point is in the big cell") {
  for (int n = 1; n <= 3; ++n) CHECK(gamma_dims(GrassPoint::base(n)).big_cell());
}

TEST_CASE("index follows the tail shift") {
  for (int s = 0; s <= 3; ++s) {
    const GrassPoint w{1, {}, s, true};
    CHECK(gamma_dims(w).index() == -s);
  }
  for (int k = 1; k <= 3; ++k) {
    GrassPoint w{1, {}, 0, true};
    for (int p = 1; p <= k; ++p) w.columns.push_back(scalar_vec({{p, Rational(1)}}));
    CHECK(gamma_dims(w).index() == k);
  }
}

TEST_CASE("point from dressing lands in the big cell") {
  testgen::Gen g(21);
  for (int t = 0; t < 10; ++t) {
    const int n = g.integer(1, 2);
    const auto s = g.dressing(n, 3, 6);
    const auto w = point_from_dressing(s, 10, 10);
    CHECK(gamma_dims(w).big_cell());
    const auto back = dressing_from_point(w, 3, 6);
    CHECK(back.agrees_with(s.with_xprec(6)));
  }
}

TEST_CASE("outside the big cell there is no dressing") {
  GrassPoint w{1, {}, 1, true};
  CHECK_THROWS_AS(dressing_from_point(w, 3, 4), Error);
}

TEST_CASE("membership on the base point") {
  const GrassPoint w = GrassPoint::base(1);
  CHECK(contains(w, scalar_vec({{-4, Rational(1)}, {0, Rational(3)}})).member);
  CHECK_FALSE(contains(w, scalar_vec({{1, Rational(1)}})).member);
  const LaurentVector short_vec = LaurentVector::from_map({{-2, Vec::Ones(1)}}, Vec::Zero(1), -1);
  CHECK_FALSE(contains(w, short_vec).certified);
}

TEST_CASE("stability under polynomial algebras") {
  const LaurentMatrix z2 = LaurentMatrix::monomial(identity(1), -2);
  const LaurentMatrix zp = LaurentMatrix::monomial(identity(1), 1);
  CHECK(stabilizes({z2}, GrassPoint::base(1)).holds);
  CHECK_FALSE(stabilizes({zp}, GrassPoint::base(1)).holds);
}

TEST_CASE("differential by action on simple operators") {
  const auto d2 = MatrixPsiDO::monomial(identity(1), 2);
  CHECK(is_differential_by_action(d2, 6).action == Verdict::Yes);
  const auto neg = d2 + MatrixPsiDO::monomial(identity(1), -1);
  CHECK(is_differential_by_action(neg, 6).action == Verdict::No);
}

TEST_CASE("same_span ignores the choice of columns") {
  GrassPoint a{1, {scalar_vec({{1, Rational(1)}}), scalar_vec({{2, Rational(1)}})}, 0, true};
  GrassPoint b{1, {scalar_vec({{1, Rational(1)}, {2, Rational(1)}}), scalar_vec({{2, Rational(1)}})}, 0, true};
  CHECK(same_span(a, b));
  GrassPoint c{1, {scalar_vec({{1, Rational(1)}})}, 0, true};
  CHECK_FALSE(same_span(a, c));
}

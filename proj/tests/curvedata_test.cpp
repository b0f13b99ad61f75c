#include "doctest.h"
#include "opcurve/chardata.hpp"
#include "opcurve/curvedata.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace opcurve;

TEST_CASE("characteristic polynomial against cofactor expansion") {
  testgen::Gen g(31);
  for (int t = 0; t < 12; ++t) {
    const int n = g.integer(2, 3);
    const LaurentMatrix x = g.power_series_matrix(n, 5);
    const auto poly = char_polynomial(x);
    // det(X) = (-1)^n a_n
    std::vector<std::vector<LaurentScalar>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[static_cast<size_t>(i)].push_back(entry(x, i, j));
    const LaurentScalar det = oracle::laplace_det(rows);
    const LaurentScalar an = n % 2 ? -poly.back() : poly.back();
    CHECK(det.agrees_with(an));
    CHECK(trace(x).agrees_with(-poly[1]));
  }
}

TEST_CASE("Cayley-Hamilton on random matrices") {
  testgen::Gen g(32);
  for (int t = 0; t < 10; ++t) {
    const LaurentMatrix x = g.power_series_matrix(g.integer(2, 3), 6);
    CHECK(evaluate_at(char_polynomial(x), x).is_zero_to_precision());
  }
}

TEST_CASE("charpoly display") {
  Mat a(2, 2), b(2, 2);
  a << Rational(0), Rational(1), Rational(0), Rational(0);
  b << Rational(0), Rational(0), Rational(1), Rational(0);
  const LaurentMatrix j = LaurentMatrix::monomial(a, 0) + LaurentMatrix::monomial(b, -1);
  CHECK(spectral_char_poly(j).display == "t^2 - z^-1");
}

TEST_CASE("semigroup against brute force") {
  testgen::Gen g(33);
  for (int t = 0; t < 25; ++t) {
    std::vector<int> orders;
    const int k = g.integer(1, 3);
    for (int i = 0; i < k; ++i) orders.push_back(g.integer(2, 9));
    const auto reach = oracle::reachable(orders, 80);
    for (int v = 0; v <= 80; ++v) CHECK(representable(v, orders) == static_cast<bool>(reach[static_cast<size_t>(v)]));
    const SemigroupReport r = semigroup_from_orders(orders);
    if (r.gcd == 1) {
      REQUIRE(r.genus.has_value());
      int gaps = 0;
      for (int v = 1; v <= 80; ++v) gaps += reach[static_cast<size_t>(v)] ? 0 : 1;
      CHECK(*r.genus == gaps);
      CHECK(static_cast<int>(r.gaps.size()) == gaps);
    } else {
      CHECK_FALSE(r.genus.has_value());
    }
  }
}

TEST_CASE("span orders eliminate shared leading terms") {
  const LaurentScalar a = LaurentScalar::from_map({{-3, Rational(1)}, {-1, Rational(1)}}, Rational(0));
  const LaurentScalar b = LaurentScalar::from_map({{-3, Rational(1)}}, Rational(0));
  auto orders = span_orders({a, b});
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<int>{1, 3});
}

TEST_CASE("cusp algebra data") {
  AlgebraSpec spec;
  spec.n = 1;
  spec.a_gens = {LaurentMatrix::monomial(identity(1), -2), LaurentMatrix::monomial(identity(1), -3)};
  spec.ad_gens = {LaurentScalar::monomial(Rational(1), -2), LaurentScalar::monomial(Rational(1), -3)};
  CHECK(rank_of_ad(spec) == 1);
  const SemigroupReport r = semigroup_data(spec);
  REQUIRE(r.genus.has_value());
  CHECK(*r.genus == 1);
  CHECK(check_condition21(spec).passes());
}

TEST_CASE("cyclicity") {
  Mat a(2, 2);
  a << Rational(0), Rational(1), Rational(0), Rational(0);
  CHECK(cyclicity(LaurentMatrix::monomial(a, 0), 8).verdict == Verdict::Yes);
  CHECK(cyclicity(LaurentMatrix::monomial(identity(2), -1), 8).verdict == Verdict::No);
}

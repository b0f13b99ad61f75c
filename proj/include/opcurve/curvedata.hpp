#pragma once

#include "opcurve/grassmannian.hpp"
#include "opcurve/linalg.hpp"
#include "opcurve/zlaurent.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opcurve {

/// Generators of a commutative algebra A in gl(n, C((z))) and of its scalar
/// diagonal subalgebra A_d (each adGen stands for adGen * I_n).
struct AlgebraSpec {
  int n = 1;
  std::vector<LaurentMatrix> a_gens;
  std::vector<LaurentScalar> ad_gens;
  int monomial_degree = 4;  // spans are taken over monomials of at most this total degree
  int expand_hi = 12;       // expansion window for Laurent elimination
};

/// GCD of the pole orders of the A_d generators.
int rank_of_ad(const AlgebraSpec& spec);

struct SemigroupReport {
  std::vector<int> orders;  // generating orders
  int gcd = 0;
  int frobenius_bound = -1;
  std::vector<int> gaps;
  std::optional<int> genus;  // undefined when gcd != 1
  /// Two-row table of 0..frobenius_bound+1 marking representable orders.
  std::string table() const;
};

bool representable(int value, const std::vector<int>& orders);
SemigroupReport semigroup_from_orders(std::vector<int> orders);
/// Pole orders realized in the span of the given series (leading exponents after elimination).
std::vector<int> span_orders(std::vector<LaurentScalar> rows);
/// Orders realized in the span of A_d monomials, then their semigroup.
SemigroupReport semigroup_data(const AlgebraSpec& spec);

/// All products of at most `max_degree` generators, starting with I_n.
std::vector<LaurentMatrix> monomials(const std::vector<LaurentMatrix>& gens, int n, int max_degree);

/// Basis of span(monomials of degree <= basis_depth) intersected with z^-k gl(n, C[[z]]).
std::vector<LaurentMatrix> filtration_piece(const AlgebraSpec& spec, int k, int basis_depth);

struct Condition21Report {
  int rank_ad = 0;
  bool part1 = false;
  LaurentRank module_rank;
  Verdict part2 = Verdict::Inconclusive;
  bool commutative = false;
  bool ad_inside_a = false;
  bool zero_divisor_found = false;
  int depth = 0;
  std::string detail;
  bool passes() const {
    return part1 && part2 == Verdict::Yes && commutative && ad_inside_a && !zero_divisor_found;
  }
};
Condition21Report check_condition21(const AlgebraSpec& spec);

struct CyclicityReport {
  Verdict verdict = Verdict::Inconclusive;
  LaurentRank rank;
};
/// Whether I, X, ..., X^(n-1) are independent over C((z)).
CyclicityReport cyclicity(const LaurentMatrix& x, int expand_hi);

struct CharPolyReport {
  std::vector<LaurentScalar> poly;          // a_0 = 1, ..., a_n of det(tI - X)
  std::vector<LaurentScalar> coefficients;  // s_i = trace(wedge^i X)
  std::string display;                      // "t^2 - z^-1"
  std::string ideal_generator;              // "1 - (s1) + (s2)"
  int known_hi = kInf;                      // every coefficient is known through z^known_hi
};
CharPolyReport spectral_char_poly(const LaurentMatrix& x);

}  // namespace opcurve

#pragma once

#include "opcurve/context.hpp"
#include "opcurve/curvedata.hpp"
#include "opcurve/grassmannian.hpp"
#include "opcurve/psido.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opcurve {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};
using CheckLedger = std::vector<Check>;

struct CommuteFailure {
  int i = 0, j = 0;
  std::string witness;  // the commutator, printed
};

struct CommuteReport {
  bool pass = true;
  int pairs = 0;
  int xprec = 0;  // smallest x-precision among the inputs, kInf when all are exact
  std::vector<CommuteFailure> failures;
  std::string summary() const;
};

CommuteReport verify_commutative(const std::vector<MatrixPsiDO>& gens);

struct ForwardResult {
  MatrixPsiDO s = MatrixPsiDO::identity(1);
  std::vector<MatrixPsiDO> b_gens;
  std::vector<MatrixPsiDO> bd_gens;  // images of the A_d generators
  std::vector<DifferentialReport> differential;
  CheckLedger checks;
};

ForwardResult geometric_to_operators(const AlgebraSpec& spec, const GrassPoint& w, const Context& ctx);

struct BackwardResult {
  MatrixPsiDO s = MatrixPsiDO::identity(1);
  AlgebraSpec spec;  // undressed a_gens and ad_gens
  GrassPoint w;
  GammaReport gamma;
  SemigroupReport semigroup;
  Condition21Report condition21;
  std::optional<CharPolyReport> char_poly;
  int char_poly_source = -1;  // index of the a_gen used
  CheckLedger checks;
};

/// `p` is the designated monic element; it is expected among the products of b_gens.
BackwardResult operators_to_geometric(const std::vector<MatrixPsiDO>& b_gens, const std::vector<MatrixPsiDO>& bd_gens,
                                      const MatrixPsiDO& p, const Context& ctx);

struct RoundTripReport {
  bool identity = true;
  CheckLedger checks;
};

/// forward then backward; the designated P is the first monic image of an A_d generator.
RoundTripReport round_trip_geometric(const AlgebraSpec& spec, const GrassPoint& w, const Context& ctx);
/// backward then forward.
RoundTripReport round_trip_operators(const std::vector<MatrixPsiDO>& b_gens, const std::vector<MatrixPsiDO>& bd_gens,
                                     const MatrixPsiDO& p, const Context& ctx);

}  // namespace opcurve

#include "opcurve/pipelines.hpp"

#include "opcurve/chardata.hpp"
#include "opcurve/error.hpp"
#include "opcurve/print.hpp"

#include <algorithm>
#include <sstream>

namespace opcurve {

namespace {

std::string commute_witness(const MatrixPsiDO& c) {
  // Largest degree with a nonzero coefficient first, so the witness is short.
  int top = c.order();
  MatrixPsiDO lead = c.dropped_above(top);
  std::vector<XMat> terms{lead.term(top)};
  return print_operator(MatrixPsiDO(c.n(), top, terms, true)) + (c.lo() < top ? " + lower order" : "");
}

bool is_scalar_diagonal(const LaurentMatrix& a) {
  const int n = static_cast<int>(a.zero_value().rows());
  for (int e = a.lo(); e <= a.top(); ++e) {
    const Mat m = a.coeff(e);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((i != j && !m(i, j).is_zero()) || (i == j && m(i, i) != m(0, 0))) return false;
  }
  return true;
}

std::string window_note(const MatrixPsiDO& p) { return "[" + describe_window(p) + "]"; }

void require(CheckLedger& ledger, const std::string& name, bool ok, const std::string& detail, ErrorKind kind,
             const std::string& message) {
  ledger.push_back({name, ok, detail});
  if (!ok) throw Error(kind, message + (detail.empty() ? "" : ": " + detail));
}

MatrixPsiDO conjugate(const MatrixPsiDO& left, const MatrixPsiDO& mid, const MatrixPsiDO& right) {
  return compose(compose(left, mid), right);
}

}  // namespace

std::string CommuteReport::summary() const {
  std::ostringstream os;
  if (pass) {
    os << "PASS: all commutators zero to precision (Nx=" << (is_pos_inf(xprec) ? "exact" : std::to_string(xprec)) << ")";
  } else {
    os << "FAIL: " << failures.size() << " of " << pairs << " commutators nonzero";
    for (const auto& f : failures) os << "\n  [g" << f.i << ", g" << f.j << "] = " << f.witness;
  }
  return os.str();
}

CommuteReport verify_commutative(const std::vector<MatrixPsiDO>& gens) {
  CommuteReport rep;
  rep.xprec = kInf;
  for (const auto& g : gens) rep.xprec = std::min(rep.xprec, g.min_xprec());
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      ++rep.pairs;
      const MatrixPsiDO c = commutator(gens[i], gens[j]);
      if (c.is_zero_to_precision()) continue;
      rep.pass = false;
      rep.failures.push_back({static_cast<int>(i), static_cast<int>(j), commute_witness(c)});
    }
  return rep;
}

ForwardResult geometric_to_operators(const AlgebraSpec& spec, const GrassPoint& w, const Context& ctx) {
  ForwardResult r;
  std::vector<LaurentMatrix> gens = spec.a_gens;
  for (const auto& a : spec.ad_gens) gens.push_back(scalar_matrix(a, spec.n));

  const StabilityReport st = stabilizes(gens, w);
  require(r.checks, "A.W in W", st.holds, st.detail, ErrorKind::NotModule, "W is not an A-module");

  const GammaReport g = gamma_dims(w);
  require(r.checks, "big cell", g.big_cell(),
          "h0=" + std::to_string(g.h0) + " h1=" + std::to_string(g.h1), ErrorKind::NoDressing,
          "cohomology does not vanish");

  r.s = dressing_from_point(w, ctx.depth, ctx.xprec);
  const MatrixPsiDO sinv = invert_dressing(r.s, ctx.depth);
  r.checks.push_back({"dressing", true, window_note(r.s)});

  auto transport = [&](const LaurentMatrix& a, const std::string& label) {
    const MatrixPsiDO ahat = constant_operator(a);
    const MatrixPsiDO b = conjugate(r.s, ahat, sinv);
    const DifferentialReport d = is_differential_by_action(b, ctx.depth);
    r.differential.push_back(d);
    require(r.checks, label + " differential", d.action == Verdict::Yes && d.shape, d.detail, ErrorKind::Certification,
            label + " is not certified differential");
    const MatrixPsiDO plus = split_plus_minus(b).first;
    const bool same_order = ahat.is_zero_to_precision() || plus.order() == ahat.order();
    require(r.checks, label + " order", same_order, "", ErrorKind::Certification, "conjugation changed the order");
    return plus;
  };
  for (size_t i = 0; i < spec.a_gens.size(); ++i)
    r.b_gens.push_back(transport(spec.a_gens[i], "bGen " + std::to_string(i)));
  for (size_t i = 0; i < spec.ad_gens.size(); ++i)
    r.bd_gens.push_back(transport(scalar_matrix(spec.ad_gens[i], spec.n), "bdGen " + std::to_string(i)));

  std::vector<MatrixPsiDO> all = r.b_gens;
  all.insert(all.end(), r.bd_gens.begin(), r.bd_gens.end());
  const CommuteReport c = verify_commutative(all);
  require(r.checks, "commutative", c.pass, c.pass ? "" : c.summary(), ErrorKind::Certification,
          "transported generators do not commute");
  return r;
}

BackwardResult operators_to_geometric(const std::vector<MatrixPsiDO>& b_gens, const std::vector<MatrixPsiDO>& bd_gens,
                                      const MatrixPsiDO& p, const Context& ctx) {
  BackwardResult r;
  std::vector<MatrixPsiDO> all = b_gens;
  all.insert(all.end(), bd_gens.begin(), bd_gens.end());
  all.push_back(p);
  const CommuteReport c = verify_commutative(all);
  require(r.checks, "commutative", c.pass, c.pass ? "" : c.summary(), ErrorKind::NotCommutative,
          "not a commutative algebra");

  const OrderMonicity om = order_and_monicity(p);
  require(r.checks, "P monic", om.monic_elliptic && om.order > 0, "order " + std::to_string(om.order),
          ErrorKind::Domain, "designated P is not monic of positive order");

  r.s = dress_to_constant(p, ctx.depth);
  const MatrixPsiDO sinv = invert_dressing(r.s, ctx.depth);
  r.checks.push_back({"dressing", true, window_note(r.s)});

  const int n = p.n();
  r.spec.n = n;
  r.spec.expand_hi = ctx.z_hi;
  auto undress = [&](const MatrixPsiDO& b, const std::string& label) {
    const MatrixPsiDO a = conjugate(sinv, b, r.s);
    require(r.checks, label + " constant", has_constant_coefficients(a), window_note(a), ErrorKind::Certification,
            "constant-coefficient certification failed for " + label);
    return rho(a);
  };
  for (size_t i = 0; i < b_gens.size(); ++i) r.spec.a_gens.push_back(undress(b_gens[i], "bGen " + std::to_string(i)));
  const std::vector<MatrixPsiDO> bd = bd_gens.empty() ? std::vector<MatrixPsiDO>{p} : bd_gens;
  for (size_t i = 0; i < bd.size(); ++i) {
    const std::string label = "bdGen " + std::to_string(i);
    const LaurentMatrix a = undress(bd[i], label);
    require(r.checks, label + " scalar diagonal", is_scalar_diagonal(a), print_laurent_matrix(a),
            ErrorKind::Certification, label + " does not undress to a scalar-diagonal element");
    r.spec.ad_gens.push_back(entry(a, 0, 0));
  }

  const int cols = ctx.depth + ctx.xprec;
  r.w = point_from_dressing(r.s, cols, cols);
  r.gamma = gamma_dims(r.w);
  require(r.checks, "big cell", r.gamma.big_cell(),
          "h0=" + std::to_string(r.gamma.h0) + " h1=" + std::to_string(r.gamma.h1), ErrorKind::NoDressing,
          "cohomology does not vanish");

  r.semigroup = semigroup_data(r.spec);
  r.checks.push_back({"semigroup", r.semigroup.genus.has_value(),
                      r.semigroup.genus ? "genus " + std::to_string(*r.semigroup.genus)
                                        : "gcd " + std::to_string(r.semigroup.gcd)});
  r.condition21 = check_condition21(r.spec);
  r.checks.push_back({"rank conditions", r.condition21.passes(), r.condition21.detail});

  for (size_t i = 0; i < r.spec.a_gens.size(); ++i)
    if (cyclicity(r.spec.a_gens[i], ctx.z_hi).verdict == Verdict::Yes) {
      r.char_poly = spectral_char_poly(r.spec.a_gens[i]);
      r.char_poly_source = static_cast<int>(i);
      break;
    }
  return r;
}

RoundTripReport round_trip_geometric(const AlgebraSpec& spec, const GrassPoint& w, const Context& ctx) {
  RoundTripReport rep;
  const ForwardResult f = geometric_to_operators(spec, w, ctx);
  std::optional<MatrixPsiDO> p;
  for (const auto* list : {&f.bd_gens, &f.b_gens})
    for (const auto& b : *list) {
      const OrderMonicity om = order_and_monicity(b);
      if (!p && om.monic_elliptic && om.order > 0) p = b;
    }
  if (!p) throw Error(ErrorKind::Domain, "no monic element of positive order among the transported generators");
  const BackwardResult b = operators_to_geometric(f.b_gens, f.bd_gens, *p, ctx);

  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back({name, ok, detail});
    rep.identity = rep.identity && ok;
  };
  for (size_t i = 0; i < spec.a_gens.size(); ++i)
    record("aGen " + std::to_string(i), b.spec.a_gens[i].agrees_with(spec.a_gens[i]),
           print_laurent_matrix(b.spec.a_gens[i]) + " through z^" + std::to_string(b.spec.a_gens[i].hi()));
  for (size_t i = 0; i < spec.ad_gens.size() && i < b.spec.ad_gens.size(); ++i)
    record("adGen " + std::to_string(i), b.spec.ad_gens[i].agrees_with(spec.ad_gens[i]),
           print_laurent(b.spec.ad_gens[i]) + " through z^" + std::to_string(b.spec.ad_gens[i].hi()));
  record("frame span", same_span(b.w, w), "");
  return rep;
}

RoundTripReport round_trip_operators(const std::vector<MatrixPsiDO>& b_gens, const std::vector<MatrixPsiDO>& bd_gens,
                                     const MatrixPsiDO& p, const Context& ctx) {
  RoundTripReport rep;
  const BackwardResult b = operators_to_geometric(b_gens, bd_gens, p, ctx);
  const ForwardResult f = geometric_to_operators(b.spec, b.w, ctx);
  auto record = [&](const std::string& name, const MatrixPsiDO& got, const MatrixPsiDO& want) {
    const bool ok = got.agrees_with(want);
    rep.checks.push_back({name, ok, window_note(got)});
    rep.identity = rep.identity && ok;
  };
  for (size_t i = 0; i < b_gens.size(); ++i) record("bGen " + std::to_string(i), f.b_gens[i], b_gens[i]);
  for (size_t i = 0; i < bd_gens.size(); ++i) record("bdGen " + std::to_string(i), f.bd_gens[i], bd_gens[i]);
  return rep;
}

}  // namespace opcurve

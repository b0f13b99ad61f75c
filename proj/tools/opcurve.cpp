// opcurve: command line front end for the operator/curve library.

#include "opcurve/chardata.hpp"
#include "opcurve/error.hpp"
#include "opcurve/pipelines.hpp"
#include "opcurve/print.hpp"
#include "opcurve/session.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

using namespace opcurve;

namespace {

struct Globals {
  std::optional<int> xprec, z_lo, z_hi, depth;
  std::string session_path;
  bool as_json = false;
};

struct Out {
  std::ostringstream text;
  json j = json::object();
  int status = 0;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return 2;
    case ErrorKind::Type: return 3;
    case ErrorKind::Dimension: return 4;
    case ErrorKind::NotUnit: return 5;
    case ErrorKind::Precision: return 6;
    case ErrorKind::Domain: return 7;
    case ErrorKind::NoDressing: return 8;
    case ErrorKind::NotModule: return 9;
    case ErrorKind::NotCommutative: return 10;
    case ErrorKind::Certification: return 11;
    case ErrorKind::Io: return 12;
  }
  return 1;
}

std::string bound_text(int v) { return is_pos_inf(v) ? "exact" : std::to_string(v); }

json window_json(const Context& c) { return to_json(c); }

std::string window_text(const Context& c) {
  return "Nx=" + std::to_string(c.xprec) + ", depth=" + std::to_string(c.depth) + ", z in [" + std::to_string(c.z_lo) +
         ", " + std::to_string(c.z_hi) + "]";
}

class Runner {
 public:
  explicit Runner(const Globals& g) : g_(g) {
    if (!g.session_path.empty()) s_ = load_session(g.session_path);
    if (g.xprec) s_.ctx.xprec = *g.xprec;
    if (g.z_lo) s_.ctx.z_lo = *g.z_lo;
    if (g.z_hi) s_.ctx.z_hi = *g.z_hi;
    if (g.depth) s_.ctx.depth = *g.depth;
    if (s_.ctx.xprec < 1 || s_.ctx.depth < 0 || s_.ctx.z_lo > s_.ctx.z_hi)
      throw Error(ErrorKind::Domain, "invalid precision context");
  }

  const Context& ctx() const { return s_.ctx; }
  Session& session() { return s_; }

  Value value(const std::string& text) {
    if (!env_) env_ = s_.env();
    return evaluate(text, s_.ctx, *env_);
  }
  MatrixPsiDO op(const std::string& text) { return as_operator(value(text)); }
  LaurentMatrix laurent(const std::string& text) { return as_laurent(value(text)); }

  GrassPoint point(const std::string& name) {
    if (name == "base") return GrassPoint::base(1);
    return s_.point(name);
  }

  AlgebraSpec algebra(const std::string& name) {
    AlgebraSpec a = s_.algebra(name);
    a.expand_hi = s_.ctx.z_hi;
    return a;
  }

  /// Operator-valued bindings in name order.
  std::vector<std::pair<std::string, MatrixPsiDO>> operator_bindings() {
    if (!env_) env_ = s_.env();
    std::vector<std::pair<std::string, MatrixPsiDO>> out;
    for (const auto& [name, v] : *env_)
      if (std::holds_alternative<MatrixPsiDO>(v)) out.emplace_back(name, std::get<MatrixPsiDO>(v));
    return out;
  }

  void save(const std::string& name) {
    if (name.empty()) return;
    if (g_.session_path.empty()) throw Error(ErrorKind::Io, "--save needs --session");
    save_session(g_.session_path, s_);
  }

 private:
  Globals g_;
  Session s_;
  std::optional<Env> env_;
};

void emit_operator(Out& o, const std::string& key, const MatrixPsiDO& p) {
  o.text << key << " = " << print_operator(p) << "\n    [" << describe_window(p) << "]\n";
  o.j[key] = {{"text", print_operator(p)}, {"value", to_json(Value(p))}};
}

void emit_laurent(Out& o, const std::string& key, const LaurentMatrix& a) {
  const int n = static_cast<int>(a.zero_value().rows());
  if (n == 1)
    o.text << key << " = " << format_laurent(entry(a, 0, 0)) << "\n";
  else {
    o.text << key << " =\n";
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) o.text << "  [" << i << "," << k << "] " << format_laurent(entry(a, i, k)) << "\n";
  }
  o.j[key] = {{"text", print_laurent_matrix(a)}, {"value", to_json(Value(a))}};
}

void emit_point(Out& o, const GrassPoint& w) {
  o.text << "n=" << w.n << " tail_start=" << w.tail_start << (w.tail_exact ? " (standard tail)" : " (tail from dressing)")
         << "\n";
  for (size_t c = 0; c < w.columns.size(); ++c) {
    o.text << "  col " << c << ":";
    for (int i = 0; i < w.n; ++i) o.text << (i ? " | " : " ") << format_laurent(component(w.columns[c], i));
    o.text << "\n";
  }
  o.j["point"] = to_json(w);
}

void emit_checks(Out& o, const CheckLedger& l) {
  json arr = json::array();
  for (const auto& c : l) {
    o.text << "  " << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  o.j["checks"] = arr;
}

std::vector<int> parse_orders(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Syntax, "orders must be comma-separated integers: '" + item + "'");
    }
  }
  return out;
}

void emit_semigroup(Out& o, const SemigroupReport& r) {
  json gaps = r.gaps;
  o.text << "orders {";
  for (size_t i = 0; i < r.orders.size(); ++i) o.text << (i ? "," : "") << r.orders[i];
  o.text << "} gcd " << r.gcd << "\n";
  o.j["orders"] = r.orders;
  o.j["gcd"] = r.gcd;
  if (r.genus) {
    o.text << "gaps {";
    for (size_t i = 0; i < r.gaps.size(); ++i) o.text << (i ? "," : "") << r.gaps[i];
    o.text << "}, genus " << *r.genus << ", every order > " << r.frobenius_bound << " is realized\n" << r.table() << "\n";
    o.j["gaps"] = gaps;
    o.j["genus"] = *r.genus;
    o.j["frobenius_bound"] = r.frobenius_bound;
  } else {
    o.text << "gcd is not 1: infinitely many gaps, genus undefined\n";
    o.j["genus"] = nullptr;
  }
}

void emit_condition21(Out& o, const Condition21Report& r) {
  o.text << "(1) rank of A_d = " << r.rank_ad << (r.part1 ? " ok" : " FAIL") << "\n"
         << "(2) module rank " << r.module_rank.rank << " (window z^" << r.module_rank.window << "): "
         << to_string(r.part2) << "\n"
         << "commutative: " << (r.commutative ? "yes" : "no") << "; A_d inside A: " << (r.ad_inside_a ? "yes" : "no")
         << "; zero divisors: " << (r.zero_divisor_found ? "found" : "none found") << " (monomial degree " << r.depth
         << ")\n"
         << (r.passes() ? "PASS" : "FAIL") << ": " << r.detail << "\n";
  o.j["condition21"] = {{"rank_ad", r.rank_ad},           {"part1", r.part1},
                        {"module_rank", r.module_rank.rank}, {"part2", to_string(r.part2)},
                        {"commutative", r.commutative},     {"ad_inside_a", r.ad_inside_a},
                        {"zero_divisor_found", r.zero_divisor_found}, {"passes", r.passes()},
                        {"detail", r.detail}};
  if (!r.passes()) o.status = 1;
}

void emit_charpoly(Out& o, const CharPolyReport& r) {
  o.text << "ch(t) = " << r.display;
  if (!is_pos_inf(r.known_hi)) o.text << "   [coefficients known through z^" << r.known_hi << "]";
  o.text << "\nideal generator: " << r.ideal_generator << "\n";
  json coeffs = json::array();
  for (const auto& c : r.coefficients) coeffs.push_back(print_laurent(c));
  o.j["charpoly"] = {{"display", r.display},
                     {"ideal_generator", r.ideal_generator},
                     {"coefficients", coeffs},
                     {"known_hi", bound_text(r.known_hi)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opcurve: commuting matrix differential operators and their curve data"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  int xprec = 0, zlo = 0, zhi = 0, depth = 0;
  auto* o_xprec = app.add_option("--x-prec", xprec, "x-precision Nx (default 12)");
  auto* o_zlo = app.add_option("--z-lo", zlo, "lowest z exponent shown (default -12)");
  auto* o_zhi = app.add_option("--z-hi", zhi, "z expansion window (default 12)");
  auto* o_depth = app.add_option("--depth", depth, "d-depth (default 8)");
  app.add_option("--session", g.session_path, "session file");
  app.add_flag("--json", g.as_json, "machine-readable output");
  for (auto* opt : {o_xprec, o_zlo, o_zhi, o_depth}) opt->configurable();

  std::string a, b, save_name, point_name = "W", algebra_name = "A", orders, p_name;
  std::vector<std::string> gens, bd_gens, exprs;
  int r = 0, columns = 0, k = 0, basis_depth = 4;

  auto* pdo = app.add_subcommand("pdo", "pseudodifferential operator calculus");
  pdo->require_subcommand(1);
  auto* pdo_compose = pdo->add_subcommand("compose", "A o B");
  auto* pdo_comm = pdo->add_subcommand("commutator", "[A, B]");
  for (auto* c : {pdo_compose, pdo_comm}) {
    c->add_option("A", a)->required();
    c->add_option("B", b)->required();
  }
  auto* pdo_split = pdo->add_subcommand("split", "differential and integral parts");
  auto* pdo_rho = pdo->add_subcommand("rho", "symbol map to C((z))");
  auto* pdo_root = pdo->add_subcommand("root", "r-th root of a monic operator");
  auto* pdo_invert = pdo->add_subcommand("invert", "inverse of a dressing operator");
  auto* pdo_dress = pdo->add_subcommand("dress", "dressing S with S^-1 P S = d^r");
  for (auto* c : {pdo_split, pdo_rho, pdo_root, pdo_invert, pdo_dress}) c->add_option("A", a)->required();
  pdo_root->add_option("--r", r, "root index (default: the order)");
  for (auto* c : {pdo_compose, pdo_comm, pdo_split, pdo_root, pdo_invert, pdo_dress})
    c->add_option("--save", save_name, "store the result in the session");

  auto* grass = app.add_subcommand("grass", "points of the Grassmannian");
  grass->require_subcommand(1);
  auto* g_from = grass->add_subcommand("from-dressing", "W = S^-1 C[z^-1]^n");
  g_from->add_option("S", a)->required();
  g_from->add_option("--columns", columns, "column blocks to store (default depth + Nx)");
  g_from->add_option("--save", save_name, "store the point in the session");
  auto* g_to = grass->add_subcommand("to-dressing", "dressing operator of a big-cell point");
  g_to->add_option("--save", save_name, "store the dressing in the session");
  auto* g_h = grass->add_subcommand("h0h1", "kernel and cokernel of gamma_W");
  auto* g_stab = grass->add_subcommand("stabilizes", "A.W in W");
  g_stab->add_option("--gen", gens, "generator expression (repeatable)");
  g_stab->add_option("--algebra", algebra_name, "algebra binding used when no --gen is given");
  for (auto* c : {g_to, g_h, g_stab}) c->add_option("W", point_name, "point binding (default W, or 'base')");
  auto* g_diff = grass->add_subcommand("is-differential", "differentiality by action on C[z^-1]^n");
  g_diff->add_option("P", a)->required();

  auto* curve = app.add_subcommand("curve", "algebra and curve data");
  curve->require_subcommand(1);
  auto* c_semi = curve->add_subcommand("semigroup", "orders, gaps and genus");
  c_semi->add_option("--orders", orders, "comma-separated generating orders");
  auto* c_filt = curve->add_subcommand("filtration", "basis of A intersected with z^-k gl(n, C[[z]])");
  c_filt->add_option("--k", k)->required();
  c_filt->add_option("--basis-depth", basis_depth, "monomial degree used for the span (default 4)");
  auto* c_c21 = curve->add_subcommand("condition21", "rank-one A_d and rank-n module checks");
  for (auto* c : {c_semi, c_filt, c_c21}) c->add_option("--algebra", algebra_name, "algebra binding (default A)");
  auto* c_char = curve->add_subcommand("charpoly", "spectral characteristic polynomial");
  auto* c_cyc = curve->add_subcommand("cyclicity", "whether I, X, ..., X^(n-1) are independent");
  for (auto* c : {c_char, c_cyc}) c->add_option("X", a)->required();

  auto* pipe = app.add_subcommand("pipeline", "the two correspondences");
  pipe->require_subcommand(1);
  auto* p_fwd = pipe->add_subcommand("forward", "(A, W) to commuting operators");
  auto* p_bwd = pipe->add_subcommand("backward", "commuting operators to (A, W) and curve data");
  auto* p_rt = pipe->add_subcommand("roundtrip", "forward then backward, or backward then forward");
  for (auto* c : {p_fwd, p_rt}) {
    c->add_option("--algebra", algebra_name, "algebra binding (default A)");
    c->add_option("--point", point_name, "point binding (default W, or 'base')");
  }
  for (auto* c : {p_bwd, p_rt}) {
    c->add_option("--gen", gens, "generator of B (repeatable; default: every operator binding)");
    c->add_option("--bd", bd_gens, "generator of B_d (repeatable; default: P)");
    c->add_option("--p", p_name, "the designated monic element (default: first monic generator)");
  }

  auto* verify = app.add_subcommand("verify", "verification commands");
  verify->require_subcommand(1);
  auto* v_comm = verify->add_subcommand("commute", "pairwise commutators vanish");
  v_comm->add_option("exprs", exprs, "operators (default: every operator binding)");

  auto* sess = app.add_subcommand("session", "session files");
  sess->require_subcommand(1);
  auto* s_show = sess->add_subcommand("show", "list bindings");
  auto* s_set = sess->add_subcommand("set", "bind NAME to an expression");
  s_set->add_option("NAME", b)->required();
  s_set->add_option("EXPR", a)->required();
  auto* s_canon = sess->add_subcommand("canon", "rewrite the session in canonical form");

  CLI11_PARSE(app, argc, argv);
  if (*o_xprec) g.xprec = xprec;
  if (*o_zlo) g.z_lo = zlo;
  if (*o_zhi) g.z_hi = zhi;
  if (*o_depth) g.depth = depth;

  Out o;
  try {
    Runner run(g);
    const Context& ctx = run.ctx();
    o.j["window"] = window_json(ctx);

    auto store = [&](const auto& v) {
      if (save_name.empty()) return;
      run.session().set(save_name, v);
      run.save(save_name);
      o.text << "saved as " << save_name << "\n";
    };

    if (*pdo_compose || *pdo_comm) {
      const MatrixPsiDO x = run.op(a), y = run.op(b);
      const MatrixPsiDO res = *pdo_compose ? compose(x, y) : commutator(x, y);
      emit_operator(o, "result", res);
      store(Value(res));
    } else if (*pdo_split) {
      const auto [plus, minus] = split_plus_minus(run.op(a));
      emit_operator(o, "plus", plus);
      emit_operator(o, "minus", minus);
      store(Value(plus));
    } else if (*pdo_rho) {
      emit_laurent(o, "rho", rho(run.op(a)));
    } else if (*pdo_root) {
      const MatrixPsiDO p = run.op(a);
      const int idx = r > 0 ? r : order_and_monicity(p).order;
      const MatrixPsiDO root = rth_root(p, idx, ctx.depth);
      emit_operator(o, "root", root);
      const bool back = power(root, idx).agrees_with(p);
      o.text << "root^" << idx << " == input to precision: " << (back ? "yes" : "no") << "\n";
      o.j["verified"] = back;
      store(Value(root));
    } else if (*pdo_invert) {
      const MatrixPsiDO s = run.op(a);
      const MatrixPsiDO inv = invert_dressing(s, ctx.depth);
      emit_operator(o, "inverse", inv);
      store(Value(inv));
    } else if (*pdo_dress) {
      const MatrixPsiDO p = run.op(a);
      const MatrixPsiDO s = dress_to_constant(p, ctx.depth);
      const MatrixPsiDO back = compose(compose(invert_dressing(s, ctx.depth), p), s);
      emit_operator(o, "S", s);
      emit_operator(o, "undressed", back);
      const bool ok = has_constant_coefficients(back);
      o.text << "S^-1 P S has constant coefficients: " << (ok ? "yes" : "no") << " (" << window_text(ctx) << ")\n";
      o.j["verified"] = ok;
      store(Value(s));
    } else if (*g_from) {
      const MatrixPsiDO s = run.op(a);
      const int cols = columns > 0 ? columns : ctx.depth + ctx.xprec;
      const GrassPoint w = point_from_dressing(s, cols, cols);
      emit_point(o, w);
      store(w);
    } else if (*g_to) {
      const MatrixPsiDO s = dressing_from_point(run.point(point_name), ctx.depth, ctx.xprec);
      emit_operator(o, "S", s);
      store(Value(s));
    } else if (*g_h) {
      const GammaReport rep = gamma_dims(run.point(point_name));
      o.text << "h0=" << rep.h0 << " h1=" << rep.h1 << " index " << rep.index() << (rep.big_cell() ? " big-cell" : "")
             << "\n";
      o.j["h0"] = rep.h0;
      o.j["h1"] = rep.h1;
      o.j["index"] = rep.index();
      o.j["big_cell"] = rep.big_cell();
      o.j["window_matrix"] = to_json(Value(rep.window_matrix))["rows"];
    } else if (*g_stab) {
      std::vector<LaurentMatrix> ls;
      if (gens.empty()) {
        const AlgebraSpec spec = run.algebra(algebra_name);
        ls = spec.a_gens;
        for (const auto& ad : spec.ad_gens) ls.push_back(scalar_matrix(ad, spec.n));
      }
      for (const auto& e : gens) ls.push_back(run.laurent(e));
      const StabilityReport rep = stabilizes(ls, run.point(point_name));
      o.text << (rep.holds ? "PASS: " : "FAIL: ") << rep.detail << "\n";
      o.j["holds"] = rep.holds;
      o.j["tested"] = rep.tested;
      o.j["skipped"] = rep.skipped;
      o.j["detail"] = rep.detail;
      if (!rep.holds) o.status = 1;
    } else if (*g_diff) {
      const DifferentialReport rep = is_differential_by_action(run.op(a), ctx.depth);
      o.text << "action: " << to_string(rep.action) << "; shape: " << (rep.shape ? "differential" : "not differential")
             << "\n  " << rep.detail << "\n";
      o.j["action"] = to_string(rep.action);
      o.j["shape"] = rep.shape;
      o.j["certified_weight"] = rep.certified_weight;
      o.j["needed_weight"] = rep.needed_weight;
      o.j["detail"] = rep.detail;
    } else if (*c_semi) {
      emit_semigroup(o, orders.empty() ? semigroup_data(run.algebra(algebra_name))
                                       : semigroup_from_orders(parse_orders(orders)));
    } else if (*c_filt) {
      const auto basis = filtration_piece(run.algebra(algebra_name), k, basis_depth);
      o.text << "dim = " << basis.size() << " (monomials of degree <= " << basis_depth << ")\n";
      json arr = json::array();
      for (const auto& m : basis) {
        o.text << "  " << print_laurent_matrix(m) << "\n";
        arr.push_back(print_laurent_matrix(m));
      }
      o.j["basis"] = arr;
    } else if (*c_c21) {
      emit_condition21(o, check_condition21(run.algebra(algebra_name)));
    } else if (*c_char) {
      emit_charpoly(o, spectral_char_poly(run.laurent(a)));
    } else if (*c_cyc) {
      const CyclicityReport rep = cyclicity(run.laurent(a), ctx.z_hi);
      o.text << "cyclic: " << to_string(rep.verdict) << " (rank " << rep.rank.rank << ", window z^" << rep.rank.window
             << ")\n";
      o.j["cyclic"] = to_string(rep.verdict);
      o.j["rank"] = rep.rank.rank;
    } else if (*p_fwd || (*p_rt && gens.empty() && run.session().has(algebra_name))) {
      const AlgebraSpec spec = run.algebra(algebra_name);
      const GrassPoint w = point_name == "base" ? GrassPoint::base(spec.n) : run.point(point_name);
      if (*p_fwd) {
        const ForwardResult f = geometric_to_operators(spec, w, ctx);
        emit_operator(o, "S", f.s);
        for (size_t i = 0; i < f.b_gens.size(); ++i) emit_operator(o, "B" + std::to_string(i), f.b_gens[i]);
        for (size_t i = 0; i < f.bd_gens.size(); ++i) emit_operator(o, "Bd" + std::to_string(i), f.bd_gens[i]);
        emit_checks(o, f.checks);
      } else {
        const RoundTripReport rep = round_trip_geometric(spec, w, ctx);
        emit_checks(o, rep.checks);
        o.text << (rep.identity ? "PASS" : "FAIL") << ": round trip is the identity to precision (" << window_text(ctx)
               << ")\n";
        o.j["identity"] = rep.identity;
        if (!rep.identity) o.status = 1;
      }
    } else if (*p_bwd || *p_rt) {
      std::vector<MatrixPsiDO> bs, bds;
      std::optional<MatrixPsiDO> p;
      if (gens.empty())
        for (const auto& [name, op] : run.operator_bindings()) bs.push_back(op);
      for (const auto& e : gens) bs.push_back(run.op(e));
      for (const auto& e : bd_gens) bds.push_back(run.op(e));
      if (!p_name.empty()) p = run.op(p_name);
      for (const auto* list : {&bds, &bs})
        for (const auto& x : *list)
          if (!p && order_and_monicity(x).monic_elliptic) p = x;
      if (!p) throw Error(ErrorKind::Domain, "no monic generator; pass --p");
      if (bds.empty()) bds.push_back(*p);
      if (*p_bwd) {
        const BackwardResult res = operators_to_geometric(bs, bds, *p, ctx);
        emit_operator(o, "S", res.s);
        for (size_t i = 0; i < res.spec.a_gens.size(); ++i) emit_laurent(o, "A" + std::to_string(i), res.spec.a_gens[i]);
        for (size_t i = 0; i < res.spec.ad_gens.size(); ++i)
          emit_laurent(o, "Ad" + std::to_string(i), from_entries({{res.spec.ad_gens[i]}}));
        o.text << "gamma_W: h0=" << res.gamma.h0 << " h1=" << res.gamma.h1 << "\n";
        emit_semigroup(o, res.semigroup);
        emit_condition21(o, res.condition21);
        if (res.char_poly) emit_charpoly(o, *res.char_poly);
        emit_checks(o, res.checks);
        run.session().set("A", res.spec);
        run.session().set("W", res.w);
        o.j["algebra"] = to_json(res.spec);
        o.j["point"] = to_json(res.w);
      } else {
        const RoundTripReport rep = round_trip_operators(bs, bds, *p, ctx);
        emit_checks(o, rep.checks);
        o.text << (rep.identity ? "PASS" : "FAIL") << ": round trip is the identity to precision (" << window_text(ctx)
               << ")\n";
        o.j["identity"] = rep.identity;
        if (!rep.identity) o.status = 1;
      }
    } else if (*v_comm) {
      std::vector<MatrixPsiDO> ops;
      std::vector<std::string> names;
      if (exprs.empty())
        for (const auto& [name, op] : run.operator_bindings()) {
          names.push_back(name);
          ops.push_back(op);
        }
      for (const auto& e : exprs) {
        names.push_back(e);
        ops.push_back(run.op(e));
      }
      const CommuteReport rep = verify_commutative(ops);
      std::string text = rep.summary();
      for (size_t i = 0; i < names.size(); ++i) text += "\n  g" + std::to_string(i) + " = " + names[i];
      o.text << text << "\n";
      o.j["pass"] = rep.pass;
      o.j["pairs"] = rep.pairs;
      o.j["generators"] = names;
      json fails = json::array();
      for (const auto& f : rep.failures) fails.push_back({{"i", f.i}, {"j", f.j}, {"witness", f.witness}});
      o.j["failures"] = fails;
      if (!rep.pass) o.status = 1;
    } else if (*s_show) {
      for (const auto& [name, j] : run.session().bindings) {
        o.text << name << " : " << j.at("type").get<std::string>();
        if (j.at("type") == "expr") o.text << " = " << j.at("text").get<std::string>();
        o.text << "\n";
      }
      o.j["bindings"] = run.session().bindings;
    } else if (*s_set) {
      run.session().set_expr(b, a);
      save_name = b;
      run.save(b);
      o.text << "bound " << b << "\n";
    } else if (*s_canon) {
      save_name = "canon";
      run.save(save_name);
      o.text << "rewrote " << g.session_path << "\n";
    }
    o.text << "[" << window_text(ctx) << "]\n";
  } catch (const Error& e) {
    if (g.as_json)
      std::cout << canonical({{"error", {{"category", to_string(e.kind())}, {"message", e.what()}}}});
    else
      std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  if (g.as_json)
    std::cout << canonical(o.j);
  else
    std::cout << o.text.str();
  return o.status;
}

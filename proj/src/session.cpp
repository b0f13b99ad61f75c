#include "opcurve/session.hpp"

#include "opcurve/error.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace opcurve {

namespace {

constexpr const char* kFormat = "opcurve-session/1";

json bound(int v) { return is_pos_inf(v) ? json("exact") : json(v); }

int bound_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "exact") throw Error(ErrorKind::Io, "expected an integer or \"exact\"");
    return kInf;
  }
  return j.get<int>();
}

json rational(const Rational& r) { return to_string(r); }
Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

json matrix(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from(const json& j) {
  const int r = static_cast<int>(j.size());
  const int c = r ? static_cast<int>(j[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j[static_cast<size_t>(i)].size()) != c) throw Error(ErrorKind::Io, "ragged matrix");
    for (int k = 0; k < c; ++k) m(i, k) = rational_from(j[static_cast<size_t>(i)][static_cast<size_t>(k)]);
  }
  return m;
}

// Coefficients of size n: a scalar string when n == 1, otherwise a nested array.
json coefficient(const Mat& m) { return m.rows() == 1 && m.cols() == 1 ? rational(m(0, 0)) : matrix(m); }
Mat coefficient_from(const json& j, int n) {
  if (n == 1 && !j.is_array()) return Mat::Constant(1, 1, rational_from(j));
  return matrix_from(j);
}

json vector_coeff(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.rows(); ++i) a.push_back(rational(v(i)));
  return a;
}

json laurent(const LaurentMatrix& a) {
  json coeffs = json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(coefficient(c));
  return {{"lo", a.lo()}, {"hi", bound(a.hi())}, {"coeffs", coeffs}};
}

LaurentMatrix laurent_from(const json& j, int n) {
  std::vector<Mat> cs;
  for (const auto& c : j.at("coeffs")) cs.push_back(coefficient_from(c, n));
  return LaurentMatrix(j.at("lo").get<int>(), std::move(cs), bound_from(j.at("hi")), Mat::Zero(n, n));
}

json laurent_vector(const LaurentVector& a) {
  json coeffs = json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(vector_coeff(c));
  return {{"lo", a.lo()}, {"hi", bound(a.hi())}, {"coeffs", coeffs}};
}

LaurentVector laurent_vector_from(const json& j, int n, const Context& ctx) {
  // Either a serialized series, an expression string (n = 1) or a list of n component expressions.
  if (j.is_string() || j.is_array()) {
    std::vector<LaurentScalar> comps;
    const json items = j.is_string() ? json::array({j}) : j;
    if (static_cast<int>(items.size()) != n) throw Error(ErrorKind::Dimension, "column needs " + std::to_string(n) + " components");
    for (const auto& t : items) comps.push_back(entry(as_laurent(evaluate(t.get<std::string>(), ctx)), 0, 0));
    return from_components(comps);
  }
  std::vector<Vec> cs;
  for (const auto& c : j.at("coeffs")) {
    Vec v(n);
    if (static_cast<int>(c.size()) != n) throw Error(ErrorKind::Dimension, "vector coefficient has wrong length");
    for (int i = 0; i < n; ++i) v(i) = rational_from(c[static_cast<size_t>(i)]);
    cs.push_back(v);
  }
  return LaurentVector(j.at("lo").get<int>(), std::move(cs), bound_from(j.at("hi")), Vec::Zero(n));
}

json xseries(const XMat& a) {
  json coeffs = json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(coefficient(c));
  return {{"prec", bound(a.precision())}, {"coeffs", coeffs}};
}

XMat xseries_from(const json& j, int n) {
  std::vector<Mat> cs;
  for (const auto& c : j.at("coeffs")) cs.push_back(coefficient_from(c, n));
  return XMat(std::move(cs), bound_from(j.at("prec")), Mat::Zero(n, n));
}

std::string type_field(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw Error(ErrorKind::Io, "binding has no \"type\"");
  return j.at("type").get<std::string>();
}

}  // namespace

json to_json(const Context& c) {
  return {{"x_prec", c.xprec}, {"z_lo", c.z_lo}, {"z_hi", c.z_hi}, {"depth", c.depth}};
}

Context context_from_json(const json& j) {
  Context c;
  c.xprec = j.value("x_prec", c.xprec);
  c.z_lo = j.value("z_lo", c.z_lo);
  c.z_hi = j.value("z_hi", c.z_hi);
  c.depth = j.value("depth", c.depth);
  return c;
}

json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return {{"type", "scalar"}, {"value", rational(x)}};
        } else if constexpr (std::is_same_v<T, XSeries<Rational>>) {
          json coeffs = json::array();
          for (const auto& c : x.coeffs()) coeffs.push_back(rational(c));
          return {{"type", "xseries"}, {"prec", bound(x.precision())}, {"coeffs", coeffs}};
        } else if constexpr (std::is_same_v<T, LaurentMatrix>) {
          json j = laurent(x);
          j["type"] = "zseries";
          j["n"] = x.zero_value().rows();
          return j;
        } else if constexpr (std::is_same_v<T, MatrixPsiDO>) {
          json terms = json::array();
          for (const auto& t : x.terms()) terms.push_back(xseries(t));
          return {{"type", "operator"}, {"n", x.n()}, {"lo", x.lo()},
                  {"floor", x.lo_exact() ? "exact" : "unknown"}, {"terms", terms}};
        } else {
          return {{"type", "matrix"}, {"rows", matrix(x)}};
        }
      },
      v);
}

Value value_from_json(const json& j, const Context& ctx, const Env& env) {
  const std::string t = type_field(j);
  if (t == "expr") return evaluate(j.at("text").get<std::string>(), ctx, env);
  if (t == "scalar") return rational_from(j.at("value"));
  if (t == "xseries") {
    std::vector<Rational> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(rational_from(c));
    return XSeries<Rational>(std::move(cs), bound_from(j.at("prec")), Rational(0));
  }
  if (t == "zseries") return laurent_from(j, j.value("n", 1));
  if (t == "operator") {
    const int n = j.at("n").get<int>();
    std::vector<XMat> terms;
    for (const auto& x : j.at("terms")) terms.push_back(xseries_from(x, n));
    const std::string floor = j.at("floor").get<std::string>();
    if (floor != "exact" && floor != "unknown") throw Error(ErrorKind::Io, "floor must be \"exact\" or \"unknown\"");
    return MatrixPsiDO(n, j.at("lo").get<int>(), std::move(terms), floor == "exact");
  }
  if (t == "matrix") return matrix_from(j.at("rows"));
  throw Error(ErrorKind::Type, "binding of type '" + t + "' is not a value");
}

json to_json(const GrassPoint& w) {
  json cols = json::array();
  for (const auto& c : w.columns) cols.push_back(laurent_vector(c));
  return {{"type", "grass_point"}, {"n", w.n}, {"tail_start", w.tail_start}, {"tail_exact", w.tail_exact},
          {"columns", cols}};
}

GrassPoint point_from_json(const json& j, const Context& ctx) {
  if (type_field(j) != "grass_point") throw Error(ErrorKind::Type, "binding is not a grass_point");
  GrassPoint w;
  w.n = j.at("n").get<int>();
  w.tail_start = j.at("tail_start").get<int>();
  w.tail_exact = j.value("tail_exact", true);
  for (const auto& c : j.at("columns")) w.columns.push_back(laurent_vector_from(c, w.n, ctx));
  return w;
}

json to_json(const AlgebraSpec& a) {
  json ag = json::array(), adg = json::array();
  for (const auto& g : a.a_gens) ag.push_back(laurent(g));
  for (const auto& g : a.ad_gens) adg.push_back(laurent(from_entries({{g}})));
  return {{"type", "algebra"},         {"n", a.n},         {"a_gens", ag}, {"ad_gens", adg},
          {"monomial_degree", a.monomial_degree}};
}

AlgebraSpec algebra_from_json(const json& j, const Context& ctx) {
  if (type_field(j) != "algebra") throw Error(ErrorKind::Type, "binding is not an algebra");
  AlgebraSpec a;
  a.n = j.at("n").get<int>();
  a.monomial_degree = j.value("monomial_degree", a.monomial_degree);
  a.expand_hi = ctx.z_hi;
  auto decode = [&](const json& g, int n) {
    if (g.is_string()) {
      const LaurentMatrix m = as_laurent(evaluate(g.get<std::string>(), ctx));
      if (m.zero_value().rows() != n) throw Error(ErrorKind::Dimension, "generator has the wrong size");
      return m;
    }
    return laurent_from(g, n);
  };
  for (const auto& g : j.at("a_gens")) a.a_gens.push_back(decode(g, a.n));
  for (const auto& g : j.value("ad_gens", json::array())) a.ad_gens.push_back(entry(decode(g, 1), 0, 0));
  return a;
}

std::string Session::type_of(const std::string& name) const {
  auto it = bindings.find(name);
  if (it == bindings.end()) throw Error(ErrorKind::Io, "no binding named '" + name + "'");
  return type_field(it->second);
}

Env Session::env() const {
  // Expression bindings may refer to other bindings; resolve on demand and reject cycles.
  Env out;
  std::set<std::string> active;
  std::function<void(const std::string&)> resolve = [&](const std::string& name) {
    if (out.count(name)) return;
    const json& j = bindings.at(name);
    const std::string t = type_field(j);
    if (t == "grass_point" || t == "algebra") return;
    if (!active.insert(name).second) throw Error(ErrorKind::Syntax, "binding '" + name + "' refers to itself");
    if (t == "expr") {
      const Expr e = parse(j.at("text").get<std::string>());
      std::function<void(const Expr&)> deps = [&](const Expr& x) {
        if (x.kind == Expr::Kind::Symbol && bindings.count(x.name)) resolve(x.name);
        for (const auto& a : x.args) deps(a);
      };
      deps(e);
      out[name] = elaborate(e, ctx, out);
    } else {
      out[name] = value_from_json(j, ctx);
    }
    active.erase(name);
  };
  for (const auto& [name, j] : bindings) resolve(name);
  return out;
}

Value Session::value(const std::string& name) const {
  type_of(name);
  const Env e = env();
  auto it = e.find(name);
  if (it == e.end()) throw Error(ErrorKind::Type, "binding '" + name + "' is not a value");
  return it->second;
}

GrassPoint Session::point(const std::string& name) const {
  type_of(name);
  return point_from_json(bindings.at(name), ctx);
}

AlgebraSpec Session::algebra(const std::string& name) const {
  type_of(name);
  return algebra_from_json(bindings.at(name), ctx);
}

void Session::set(const std::string& name, const Value& v) { bindings[name] = to_json(v); }
void Session::set(const std::string& name, const GrassPoint& w) { bindings[name] = to_json(w); }
void Session::set(const std::string& name, const AlgebraSpec& a) { bindings[name] = to_json(a); }
void Session::set_expr(const std::string& name, const std::string& text) {
  parse(text);
  bindings[name] = {{"type", "expr"}, {"text", text}};
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

std::string dump_session(const Session& s) {
  json b = json::object();
  for (const auto& [k, v] : s.bindings) b[k] = v;
  return canonical({{"format", kFormat}, {"context", to_json(s.ctx)}, {"bindings", b}});
}

Session parse_session(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("session is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kFormat)
    throw Error(ErrorKind::Io, std::string("session must have \"format\": \"") + kFormat + "\"");
  Session s;
  s.ctx = context_from_json(j.value("context", json::object()));
  const json bindings = j.value("bindings", json::object());
  for (auto it = bindings.begin(); it != bindings.end(); ++it) {
    type_field(it.value());
    s.bindings[it.key()] = it.value();
  }
  return s;
}

Session load_session(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_session(ss.str());
}

void save_session(const std::string& path, const Session& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << dump_session(s);
}

}  // namespace opcurve

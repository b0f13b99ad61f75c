#pragma once

#include "opcurve/context.hpp"
#include "opcurve/curvedata.hpp"
#include "opcurve/expr.hpp"
#include "opcurve/grassmannian.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace opcurve {

using json = nlohmann::json;

/// Named bindings plus the precision context. Bindings are kept in their
/// serialized form and decoded on demand, so save(load(text)) reproduces
/// canonical text byte for byte. FORMAT.md describes the layout.
struct Session {
  Context ctx;
  std::map<std::string, json> bindings;

  bool has(const std::string& name) const { return bindings.count(name) != 0; }
  std::string type_of(const std::string& name) const;

  /// Expression environment: every binding that decodes to a Value.
  Env env() const;
  Value value(const std::string& name) const;
  GrassPoint point(const std::string& name) const;
  AlgebraSpec algebra(const std::string& name) const;

  void set(const std::string& name, const Value& v);
  void set(const std::string& name, const GrassPoint& w);
  void set(const std::string& name, const AlgebraSpec& a);
  void set_expr(const std::string& name, const std::string& text);
};

json to_json(const Context& c);
Context context_from_json(const json& j);
json to_json(const Value& v);
Value value_from_json(const json& j, const Context& ctx, const Env& env = {});
json to_json(const GrassPoint& w);
GrassPoint point_from_json(const json& j, const Context& ctx);
json to_json(const AlgebraSpec& a);
AlgebraSpec algebra_from_json(const json& j, const Context& ctx);

std::string dump_session(const Session& s);
Session parse_session(const std::string& text);
Session load_session(const std::string& path);
void save_session(const std::string& path, const Session& s);

/// Canonical text of any JSON document (sorted keys, two-space indent, trailing newline).
std::string canonical(const json& j);

}  // namespace opcurve

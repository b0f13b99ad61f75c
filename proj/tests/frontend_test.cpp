#include "doctest.h"
#include "opcurve/error.hpp"
#include "opcurve/expr.hpp"
#include "opcurve/session.hpp"

#include <fstream>
#include <sstream>

using namespace opcurve;

namespace {
ErrorKind kind_of(const std::string& text) {
  try {
    evaluate(text, Context{});
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for " << text);
  return ErrorKind::Io;
}
std::string message_of(const std::string& text) {
  try {
    evaluate(text, Context{});
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("printed values parse back to the same value") {
  const Context ctx;
  for (const std::string text :
       {"Dx^2 - 2*1/((x+1)^2)", "x*Dx^-1", "[[0,1],[Dx,0]]", "(1 + x)^3*Dx", "3/2", "z^-2 + 4*z", "[[0,1],[z^-1,0]]",
        "Dx^-3 + x^2", "1/(1 - x)"}) {
    const Value v = evaluate(text, ctx);
    const Value w = evaluate(print_value(v), ctx);
    CHECK_MESSAGE(print_value(w) == print_value(v), text);
    CHECK(std::string(kind_name(v)) == kind_name(w));
  }
}

TEST_CASE("operator precedence") {
  const Context ctx;
  CHECK(print_value(evaluate("-2^2", ctx)) == "-4");
  CHECK(print_value(evaluate("2*3 + 4", ctx)) == "10");
  CHECK(print_value(evaluate("2^-1", ctx)) == "1/2");
}

TEST_CASE("errors carry a category and a position") {
  CHECK(kind_of("1 +") == ErrorKind::Syntax);
  CHECK(kind_of("x^2^3") == ErrorKind::Syntax);
  CHECK(kind_of("x*z") == ErrorKind::Type);
  CHECK(kind_of("[[1,2]]") == ErrorKind::Syntax);
  CHECK(kind_of("[[1,0],[0,1]] + [[1,0,0],[0,1,0],[0,0,1]]") == ErrorKind::Dimension);
  CHECK(print_value(evaluate("[[1,0],[0,1]] + [[1]]", Context{})) == "[[2,0],[0,2]]");
  CHECK(kind_of("1/x") == ErrorKind::NotUnit);
  CHECK(kind_of("(x*Dx)^-1") == ErrorKind::Type);
  CHECK(kind_of("foo") == ErrorKind::Syntax);
  CHECK(message_of("1 + )").rfind("line 1, column 5: ", 0) == 0);
}

TEST_CASE("session files round trip byte for byte") {
  for (const std::string name : {"cusp", "basepoint", "jalgebra", "shifted"}) {
    const std::string path = std::string(OPCURVE_DATA_DIR) + "/" + name + ".json";
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    const Session s = parse_session(buf.str());
    CHECK_MESSAGE(dump_session(s) == buf.str(), name);
    CHECK(dump_session(parse_session(dump_session(s))) == dump_session(s));
  }
}

TEST_CASE("stored values survive serialization") {
  Session s;
  const Value p = evaluate("Dx^2 - 2*1/((x+1)^2)", s.ctx);
  s.set("P", p);
  s.set("M", evaluate("[[1,2],[3,4]]", s.ctx));
  s.set("A", evaluate("z^-2 + 1", s.ctx));
  const Session t = parse_session(dump_session(s));
  CHECK(as_operator(t.value("P")).agrees_with(as_operator(p)));
  CHECK(t.type_of("M") == "matrix");
  CHECK(print_value(t.value("A")) == print_value(s.value("A")));
  CHECK(dump_session(t) == dump_session(s));
}

TEST_CASE("expression bindings refer to each other") {
  Session s;
  s.set_expr("U", "-2*1/((x+1)^2)");
  s.set_expr("P", "Dx^2 + U");
  CHECK(std::string(kind_name(s.value("P"))) == "operator");
  s.set_expr("C1", "C2");
  s.set_expr("C2", "C1");
  CHECK_THROWS_AS(s.value("C1"), Error);
}

TEST_CASE("malformed session text") {
  CHECK_THROWS_AS(parse_session("{"), Error);
  CHECK_THROWS_AS(parse_session(R"({"format":"other"})"), Error);
}

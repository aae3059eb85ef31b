#include <doctest.h>

#include "gksym/dsl.hpp"
#include "support.hpp"

using namespace gksym;

TEST_CASE("jet suffixes canonicalize") {
  CHECK(parse_poly("u_yx") == parse_poly("u_xy"));
  CHECK(parse_poly("u_tyx") == parse_poly("u_xyt"));
  CHECK(print_poly(parse_poly("u_yx")) == "u_xy");
}

TEST_CASE("Lagrangian-style terms parse") {
  const Poly p = parse_poly("1/2*u_x^2 + h(u)*u_y^2");
  CHECK(p.size() == 2);
  CHECK(p == scale(jet(U, 1, 0, 0) * jet(U, 1, 0, 0), Rational(1, 2)) + func_u("h") * jet(U, 0, 1, 0) * jet(U, 0, 1, 0));
}

TEST_CASE("zero prints as 0") { CHECK(print_poly(Poly()) == "0"); }

TEST_CASE("derivative notations agree") {
  CHECK(parse_poly("f''(u)") == parse_poly("diff(f(u),u,2)"));
  CHECK(parse_poly("diff(Int(g(u),u),u)") == parse_poly("g(u)"));
  CHECK(parse_poly("F15_t") == parse_poly("diff(F15(y,t),t)"));
}

TEST_CASE("positive-branch powers of parameters merge") {
  CHECK(parse_poly("sqrt(alpha^2)") == parse_poly("alpha"));
  CHECK(parse_poly("c^(3/2) - sqrt(c)*c").is_zero());
  CHECK(parse_poly("sqrt(2*alpha)^2") == parse_poly("2*alpha"));
}

TEST_CASE("transcendental expressions round-trip") {
  for (const char* s : {"cos(sqrt(2*alpha)*x)*exp((c^2 - beta)*t)*u",
                        "sin(sqrt(c)*y)^2 + exp(-alpha*t)*(c1 + c2*x)",
                        "3/2*u/(alpha*beta^2)"}) {
    const Poly p = parse_poly(s);
    CHECK(parse_poly(print_poly(p)) == p);
    CHECK(print_poly(parse_poly(print_poly(p))) == print_poly(p));
  }
}

TEST_CASE("normalized trees match the polynomial") {
  const Expr e = parse_expr("(u_x + u_y)^2 - u_x^2");
  CHECK(to_poly(normalize(e)) == to_poly(e));
  CHECK(to_poly(expr_from_json(to_json(e))) == to_poly(e));
}

TEST_CASE("generator syntax") {
  const Generator rot = parse_generator("x*d_y - y*d_x");
  CHECK(rot.xi[0] == -indep(Y));
  CHECK(rot.xi[1] == indep(X));
  CHECK(rot.xi[2].is_zero());
  CHECK(rot.eta.is_zero());
}

TEST_CASE("parse errors carry spans inside the offending token") {
  struct Bad {
    const char* src;
    std::size_t start;
  };
  for (const Bad& b : {Bad{"u_x + 3*", 7}, Bad{"alpha + qq", 8}, Bad{"u_x + f_x", 6}, Bad{"(u_x", 0}}) {
    CAPTURE(b.src);
    try {
      (void)parse_poly(b.src);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      const auto span = e.span();
      CHECK(span.start <= span.end);
      CHECK(span.end <= std::string(b.src).size());
      CHECK(span.start >= b.start);
      CHECK(format_parse_error(b.src, e).find('^') != std::string::npos);
    }
  }
}

TEST_CASE("round-trip property over 1000 random expressions") {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    testing::RandomExpr gen(seed);
    Poly p = gen.jet_poly(gen.uniform(1, 5), 4);
    if (seed % 3 == 0) p *= sin_of(scale(sqrt(param("c")), gen.coefficient()) * indep(Y));
    if (seed % 5 == 0) p = p * pow(param("beta"), Exponent(1, 2)) + func("F1", {0, 1, 0}, {indep(X), indep(Y), indep(T)});
    const std::string text = print_poly(p);
    CAPTURE(seed);
    CAPTURE(text);
    REQUIRE(parse_poly(text) == p);
  }
}

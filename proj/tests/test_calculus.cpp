#include <doctest.h>

#include "gksym/calculus.hpp"
#include "gksym/dsl.hpp"
#include "gksym/symmetry.hpp"
#include "support.hpp"

using namespace gksym;

TEST_CASE("total derivative on simple inputs") {
  TotalDerivative td;
  CHECK(td(parse_poly("u"), X) == parse_poly("u_x"));
  CHECK(td(parse_poly("u_xy"), T) == parse_poly("u_xyt"));
  CHECK(td(parse_poly("f(u)"), Y) == parse_poly("f'(u)*u_y"));
  CHECK(td(parse_poly("x*u_t"), X) == parse_poly("u_t + x*u_xt"));
  CHECK(td(parse_poly("exp(alpha*t)"), T) == parse_poly("alpha*exp(alpha*t)"));
  CHECK(td(parse_poly("F1_x(x,y,t)"), T) == parse_poly("F1_xt(x,y,t)"));
  CHECK(td(parse_poly("alpha*beta"), X).is_zero());
}

TEST_CASE("total derivatives commute and obey Leibniz on 200 random expressions") {
  TotalDerivative td;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    testing::RandomExpr gen(seed);
    const Poly a = gen.jet_poly(3, 3);
    const Poly b = gen.jet_poly(3, 3);
    const int i = gen.uniform(0, 2), j = gen.uniform(0, 2);
    CAPTURE(seed);
    CHECK(td(td(a, i), j) == td(td(a, j), i));
    CHECK(td(a * b, i) == td(a, i) * b + a * td(b, i));
    CHECK(td(a + b, i) == td(a, i) + td(b, i));
  }
}

TEST_CASE("partial derivative treats jets as coordinates") {
  const Poly p = parse_poly("u_x^2*u + g(u)*u_yy");
  CHECK(partial(p, jet_atom(U, {1, 0, 0})) == parse_poly("2*u*u_x"));
  CHECK(partial(p, jet_atom(U, {})) == parse_poly("u_x^2 + g'(u)*u_yy"));
}

TEST_CASE("substitution of functions and parameters") {
  const Poly p = parse_poly("f'(u)*u_x + alpha*g(u)");
  const Poly q = substitute(p, {Rule::function_symbol("f", {jet_atom(U, {})}, parse_poly("u^3")),
                                Rule::atom(param_atom("alpha"), parse_poly("2"))});
  CHECK(q == parse_poly("3*u^2*u_x + 2*g(u)"));
}

TEST_CASE("antiderivative inverts differentiation") {
  const Atom u = jet_atom(U, {});
  const Poly p = parse_poly("u^3 - 2*u + g'(u)");
  CHECK(partial(integrate(p, u), u) == p);
}

TEST_CASE("Pythagorean reduction") {
  CHECK(pythagorean_reduce(parse_poly("sin(sqrt(c)*y)^2 + cos(sqrt(c)*y)^2 - 1")).is_zero());
  CHECK(pythagorean_reduce(parse_poly("u*sin(x)^2 + u*cos(x)^2")) == parse_poly("u"));
}

TEST_CASE("jet coefficient collection") {
  const auto groups = collect_jet_coefficients(parse_poly("alpha*u_x*u_y + x*u_x*u_y + u_xx + 3"), 1);
  REQUIRE(groups.size() == 3);
  Monomial uxuy = parse_poly("u_x*u_y").terms()[0].mono;
  CHECK(groups.at(uxuy) == parse_poly("alpha + x"));
}

TEST_CASE("constraint rewriting eliminates the leading derivative") {
  const Poly eq = parse_poly("F1_t(x,y,t) - F1_xx(x,y,t)");
  const Poly lead = parse_poly("F1_t(x,y,t)");
  const auto rule = solve_constraint(eq, "F1", {indep_atom(X), indep_atom(Y), indep_atom(T)}, &lead);
  ConstraintRewriter rw({rule});
  CHECK(rw(parse_poly("F1_xt(x,y,t)")) == parse_poly("F1_xxx(x,y,t)"));
  CHECK(rw(eq).is_zero());
}

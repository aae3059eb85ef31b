#include <doctest.h>

#include "gksym/dsl.hpp"
#include "gksym/pde.hpp"

using namespace gksym;

TEST_CASE("generic equation in normal form") {
  const PDEFamily fam = parse_family_inline("generic");
  CHECK(fam.delta.size() > 0);
  const Poly rhs = normal_form(fam).rhs;
  CHECK(rhs - parse_poly("u_t") == fam.delta);
}

TEST_CASE("specialization of a concrete family") {
  const PDEFamily fam = parse_family_inline("f=alpha*u+beta;g=c;h=1/2;r=c");
  CHECK(fam.delta == parse_poly("1/2*u_x^2 + 1/2*u_y^2 + c*u_xx + c*u_yy - u_xxxx - 2*u_xxyy - u_yyyy - u_t + alpha*u + beta"));
  CHECK(fam.specialize(parse_poly("f'(u) + g(u)")) == parse_poly("alpha + c"));
}

TEST_CASE("reduction on solutions eliminates every t-jet") {
  const PDEFamily fam = parse_family_inline("f=beta;g=0;h=1/2;r=0");
  Reducer red(normal_form(fam));
  const Poly e = red(parse_poly("u_t + u_xt"));
  CHECK_FALSE(any_atom(e, [](const AtomNode& a) { return a.kind == AtomKind::Jet && a.jet.it > 0; }));
  CHECK(red(fam.delta).is_zero());
  TotalDerivative td;
  CHECK(red(td(fam.delta, X)).is_zero());
}

TEST_CASE("family JSON round-trip") {
  const PDEFamily fam = parse_family_inline("f=alpha*u;g=u/2+gamma;h=1/2;r=u/2+gamma;positive=alpha");
  const PDEFamily back = family_from_json(family_to_json(fam));
  CHECK(back.delta == fam.delta);
  CHECK(back.is_positive("alpha"));
  CHECK_FALSE(back.is_positive("beta"));
}

TEST_CASE("malformed family specs are rejected") {
  CHECK_THROWS(parse_family_inline("q=u"));
  CHECK_THROWS(parse_family_inline("f=u+"));
}

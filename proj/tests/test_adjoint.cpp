#include <doctest.h>

#include "gksym/adjoint.hpp"
#include "gksym/dsl.hpp"
#include "gksym/golden.hpp"
#include "support.hpp"

using namespace gksym;

TEST_CASE("Euler-Lagrange operator on a known Lagrangian") {
  // L = u_x^2/2 - u^3: E(L) = -u_xx - 3u^2
  CHECK(euler_lagrange(parse_poly("1/2*u_x^2 - u^3"), U) == parse_poly("-u_xx - 3*u^2"));
  CHECK(euler_lagrange(parse_poly("v*u_t"), U) == parse_poly("-v_t"));
  CHECK(euler_lagrange(parse_poly("v*u_t"), V) == parse_poly("u_t"));
}

TEST_CASE("Euler-Lagrange operator annihilates 100 random divergences") {
  TotalDerivative td;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    testing::RandomExpr gen(seed);
    const Poly div = td(gen.jet_poly(3, 2), X) + td(gen.jet_poly(3, 2), Y) + td(gen.jet_poly(3, 2), T);
    CAPTURE(seed);
    CHECK(euler_lagrange(div, U).is_zero());
  }
}

TEST_CASE("adjoint of the generic family matches the corrected transcription") {
  const auto doc = load_theorems().at("adjoint");
  const Poly adj = adjoint_equation(parse_family_inline("generic"));
  CHECK(adj == parse_poly(doc.at("corrected").get<std::string>()));
  CHECK_FALSE(adj == parse_poly(doc.at("printed").get<std::string>()));
}

TEST_CASE("strict self-adjointness fails with witness 2 u_xxxx") {
  const auto r = check_strict(parse_family_inline("generic"));
  CHECK(r.verdict == "fails");
  CHECK(r.witness_monomial == parse_poly("u_xxxx"));
  CHECK(r.witness_coefficient == 2);
}

TEST_CASE("quasi self-adjointness constraints") {
  const auto r = check_quasi(parse_family_inline("generic"));
  CHECK(r.verdict == "holds-under-constraints");
  auto has = [&](const char* src) {
    const Poly want = make_monic(parse_poly(src));
    for (const auto& c : r.constraints)
      if (make_monic(c) == want) return true;
    return false;
  };
  CHECK(has("f'(u)"));
  CHECK(has("1 - 2*r'(u)"));
  CHECK(has("h(u) - g'(u)"));
  const PDEFamily sol = parse_family_inline("f=c1;h=g'(u);r=u/2+c2");
  CHECK(self_adjoint_residual(sol, parse_poly("c")).is_zero());
  CHECK_FALSE(self_adjoint_residual(sol, parse_poly("u")).is_zero());
}

TEST_CASE("nonlinear self-adjointness condition for a given weight") {
  // Case 5 weight with its family: the residual vanishes identically.
  const PDEFamily fam = resolve_family("sa:case5");
  const Poly w = parse_poly("exp(-beta*t)*((c1 + c2*x)*y + c3 + c4*x)");
  CHECK(self_adjoint_residual(fam, w).is_zero());
  CHECK_FALSE(self_adjoint_residual(fam, parse_poly("exp(beta*t)*x")).is_zero());
}

TEST_CASE("nonlinear condition matches its transcription") {
  const auto doc = load_theorems().at("nonlinear");
  const ParseContext ctx = context_from_json(nlohmann::json{{"functions", doc.at("condition_functions")}});
  const Poly want = parse_poly(doc.at("condition").get<std::string>(), ctx);
  CHECK(make_monic(nonlinear_condition(parse_family_inline("h=g'(u);r=u/2+c"), phi_xyt())) == make_monic(want));
}

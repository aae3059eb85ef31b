#include <doctest.h>

#include "gksym/dsl.hpp"
#include "gksym/golden.hpp"
#include "gksym/symmetry.hpp"
#include "support.hpp"

using namespace gksym;

TEST_CASE("first prolongation of the rotation") {
  const auto pr = prolong(parse_generator("x*d_y - y*d_x"), 2);
  CHECK(pr.eta_coeffs.at({1, 0, 0}) == parse_poly("-u_y"));
  CHECK(pr.eta_coeffs.at({0, 1, 0}) == parse_poly("u_x"));
  CHECK(pr.eta_coeffs.at({0, 0, 1}).is_zero());
  CHECK(pr.eta_coeffs.at({1, 1, 0}) == parse_poly("u_xx - u_yy"));
}

TEST_CASE("characteristic") {
  CHECK(characteristic(parse_generator("t*d_x - x*d_u")) == parse_poly("-x - t*u_x"));
}

TEST_CASE("prolongation is independent of the differentiation path") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::RandomExpr gen(seed);
    Prolongation pr(gen.generator(2));
    for (const auto& j : jet_indices_up_to(3)) {
      const int dirs[] = {j.ix, j.iy, j.it};
      std::vector<Poly> routes;
      for (int d = 0; d < 3; ++d)
        if (dirs[d] > 0) routes.push_back(pr.eta_from(j, d));
      CAPTURE(seed);
      for (const auto& r : routes) CHECK(r == routes.front());
    }
  }
}

TEST_CASE("translations are symmetries of the generic family") {
  const PDEFamily fam = parse_family_inline("generic");
  for (const char* g : {"d_t", "d_x", "d_y"}) CHECK(check_symmetry(parse_generator(g), fam).holds);
  const auto scaling = check_symmetry(parse_generator("x*d_x + y*d_y"), fam);
  CHECK_FALSE(scaling.holds);
  CHECK_FALSE(scaling.residual.is_zero());
}

TEST_CASE("rotation needs g = r and h = 1/2") {
  const Generator rot = parse_generator("x*d_y - y*d_x");
  CHECK(check_symmetry(rot, parse_family_inline("g=r(u);h=1/2")).holds);
  CHECK_FALSE(check_symmetry(rot, parse_family_inline("g=r(u);h=1/3")).holds);
}

TEST_CASE("generator with a constrained unknown function") {
  const PDEFamily fam = parse_family_inline("f=alpha;g=0;h=0;r=0");
  CHECK(check_symmetry(parse_generator("F(y,t)*d_u ; F_t + F_yyyy = 0"), fam).holds);
  CHECK_FALSE(check_symmetry(parse_generator("F(y,t)*d_u ; F_t - F_yyyy = 0"), fam).holds);
}

TEST_CASE("determining system of the generic family") {
  const auto ds = generate_determining_system(parse_family_inline("generic"));
  CHECK(ds.size() == 201);
  CHECK(ds.find(parse_poly("xi3_u(x,y,t,u)")) >= 0);
  CHECK(ds.find(scale(parse_poly("xi3_u(x,y,t,u)"), Rational(-7, 3))) >= 0);
  CHECK(in_rational_span(ds, ds.equations[0] + scale(ds.equations[5], 3)));
  CHECK_FALSE(in_rational_span(ds, parse_poly("xi3_u(x,y,t,u) + eta(x,y,t,u)")));
}

TEST_CASE("linear parameter solve diagnoses a misprinted rate") {
  const PDEFamily fam = parse_family_inline("f=alpha*u+beta;g=c;h=1/2;r=c");
  const auto res = check_symmetry(parse_generator("exp(kappa*t)*d_u"), fam).residual;
  const auto value = solve_linear_parameter(res, param_atom("kappa"));
  REQUIRE(value.has_value());
  CHECK(*value == parse_poly("alpha"));
}

TEST_CASE("commutators close on the symmetry algebra of row 5") {
  const auto data = load_table1();
  const TableRow* row = nullptr;
  for (const auto& r : data.rows)
    if (r.row == 5) row = &r;
  REQUIRE(row != nullptr);
  std::vector<Generator> basis;
  for (const auto& g : data.base) basis.push_back(g.generator);
  for (const auto& g : row->generators) basis.push_back(g.generator);
  // Structure constants may involve the parameter beta.
  std::vector<Generator> span = basis;
  for (const auto& g : basis) {
    Generator b = g;
    for (auto& xi : b.xi) xi = xi * param("beta");
    b.eta = b.eta * param("beta");
    span.push_back(b);
  }
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      const Generator c = commutator(basis[a], basis[b]);
      CAPTURE(print_generator(c));
      CHECK(check_symmetry(c, row->family).holds);
      std::vector<Rational> coeffs;
      CHECK(rational_combination(c, span, &coeffs));
    }
}

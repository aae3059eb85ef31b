#include <doctest.h>

#include "gksym/dsl.hpp"
#include "gksym/suite.hpp"
#include "support.hpp"

using namespace gksym;

namespace {

constexpr double kTol = 1e-9;
constexpr int kSeeds = 100;

}  // namespace

TEST_CASE("zero passes and nonzero fails") {
  CHECK(spot_check_zero(Poly(), 10, kTol).pass);
  CHECK_FALSE(spot_check_zero(parse_poly("u_x + 1"), 10, kTol).pass);
  const auto strict = check_strict(parse_family_inline("generic"));
  CHECK_FALSE(spot_check_zero(strict.residual, kSeeds, kTol).pass);
}

TEST_CASE("evaluation honours fixed values and positivity") {
  NumericAssignment a;
  a.fixed = {{"x", 2.0}, {"alpha", 0.5}};
  CHECK(eval(parse_poly("x^2*alpha"), a) == doctest::Approx(2.0));
  a.positive = {"c"};
  for (std::uint64_t s = 1; s <= 20; ++s) {
    a.seed = s;
    CHECK(eval(parse_poly("c"), a) > 0);
  }
}

TEST_CASE("Pythagorean cancellation checks numerically") {
  const std::vector<Poly> parts = {parse_poly("sin(sqrt(c)*y)^2*u"), parse_poly("cos(sqrt(c)*y)^2*u"), parse_poly("-u")};
  NumericAssignment base;
  base.positive = {"c"};
  CHECK(spot_check_sum(parts, kSeeds, kTol, 1, base).pass);
}

TEST_CASE("Euler-Lagrange kernel, split into parts, over 100 seeds") {
  TotalDerivative td;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::RandomExpr gen(seed);
    std::vector<Poly> parts;
    for (int d = 0; d < 3; ++d) parts.push_back(euler_lagrange(td(gen.jet_poly(3, 2), d), U));
    CAPTURE(seed);
    CHECK(spot_check_sum(parts, kSeeds, kTol, seed).pass);
  }
}

TEST_CASE("Noether identity, split into parts, over 100 seeds") {
  TotalDerivative td;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::RandomExpr gen(seed);
    const Generator g = gen.generator(2);
    const Poly L = gen.jet_poly(3, 2);
    const ConservedVector cv = noether_vector(g, L);
    std::vector<Poly> parts = {prolonged_action(g, L),
                               L * (td(g.xi[0], X) + td(g.xi[1], Y) + td(g.xi[2], T)),
                               -(characteristic(g) * euler_lagrange(L, U))};
    for (int d = 0; d < 3; ++d) parts.push_back(-td(cv.c[d], d));
    CAPTURE(seed);
    CHECK(spot_check_sum(parts, kSeeds, kTol, seed).pass);
  }
}

TEST_CASE("conserved-vector divergences over 100 seeds") {
  SuiteOptions opts;
  opts.numeric = true;
  opts.trials = kSeeds;
  opts.tol = kTol;
  const auto res = replay_section5(opts);
  for (const auto& e : res.report.at("entries")) {
    CAPTURE(e.at("case").get<std::string>() + "/" + e.at("vector").get<std::string>());
    CHECK(e.at("formula").at("numeric").at("pass").get<bool>());
    CHECK(e.at("formula").at("numeric").at("max_relative").get<double>() < kTol);
  }
}

TEST_CASE("Taylor jets give the same verdicts") {
  const Poly identity = parse_poly("u_xy*u - u_yx*u");
  NumericAssignment base;
  base.jets = NumericAssignment::Jets::Taylor;
  CHECK(spot_check_zero(identity, kSeeds, kTol, 1, base).pass);
  TotalDerivative td;
  const Poly f = parse_poly("u^2*u_x");
  const std::vector<Poly> parts = {td(td(f, X), Y), -td(td(f, Y), X)};
  CHECK(spot_check_sum(parts, kSeeds, kTol, 1, base).pass);
}

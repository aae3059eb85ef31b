#include <doctest.h>

#include "gksym/conservation.hpp"
#include "gksym/dsl.hpp"
#include "gksym/golden.hpp"
#include "support.hpp"

using namespace gksym;

namespace {

const VectorEntry& entry(const std::vector<ConservationCase>& cases, const std::string& id, const std::string& label) {
  for (const auto& c : cases)
    if (c.id == id)
      for (const auto& v : c.vectors)
        if (v.label == label) return v;
  throw DomainError("no entry " + id + "/" + label);
}

const ConservationCase& find_case(const std::vector<ConservationCase>& cases, const std::string& id) {
  for (const auto& c : cases)
    if (c.id == id) return c;
  throw DomainError("no case " + id);
}

ConservedVector combine(const ConservedVector& a, const Rational& ka, const ConservedVector& b, const Rational& kb) {
  ConservedVector out = a;
  for (int i = 0; i < 3; ++i) out.c[i] = scale(a.c[i], ka) + scale(b.c[i], kb);
  return out;
}

}  // namespace

TEST_CASE("multinomial coefficients") {
  CHECK(multinomial({0, 0, 0}) == 1);
  CHECK(multinomial({2, 0, 0}) == 1);
  CHECK(multinomial({1, 1, 0}) == 2);
  CHECK(multinomial({2, 1, 1}) == 12);
}

TEST_CASE("Noether identity holds off-shell for 50 random pairs") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    testing::RandomExpr gen(seed);
    const Generator g = gen.generator(2);
    const Poly L = gen.jet_poly(3, 2);
    const ConservedVector cv = noether_vector(g, L);
    CAPTURE(seed);
    CHECK(noether_identity_defect(g, L, cv).is_zero());
  }
}

TEST_CASE("weighted and classical constructions agree up to trivial vectors on 20 cases") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    testing::RandomExpr gen(1000 + seed);
    const Generator g = gen.generator(2);
    const int order = 1 + static_cast<int>(seed % 4);
    const Poly L = gen.jet_poly(2, order, 1) + gen.jet_poly(1, std::min(order, 2), 2);
    const ConservedVector weighted = noether_vector(g, L);
    const ConservedVector classical = classical_noether_vector(g, L);
    CAPTURE(seed);
    CHECK(noether_identity_defect(g, L, classical).is_zero());
    CHECK(raw_divergence(weighted - classical).is_zero());
  }
}

TEST_CASE("printed weight conventions break the identity") {
  const Generator g = parse_generator("t*d_x - x*d_u");
  const Poly L = parse_poly("u*(u_t + u_xxxx + 2*u_xxyy + u_yyyy) + x*u_xy^2");
  CHECK(noether_identity_defect(g, L, noether_vector(g, L)).is_zero());
  CHECK_FALSE(noether_identity_defect(g, L, noether_vector(g, L, WeightConvention::PrintedFactorial)).is_zero());
}

TEST_CASE("formula vectors of the conserved-vector cases") {
  const auto cases = load_section5();
  const auto& v = entry(cases, "subcase2_5", "y");
  const auto& cc = find_case(cases, "subcase2_5");
  ConservedVector cv = conserved_vector(v.symmetry, v.family, cc.phi);
  cv.aux = v.aux;
  CHECK(divergence(cv, v.family).is_zero());
  CHECK_FALSE(is_trivial(cv, v.family));

  const auto& q = find_case(cases, "case1_quasi");
  for (const auto& qv : q.vectors) {
    ConservedVector w = conserved_vector(qv.symmetry, qv.family, q.phi);
    CHECK(divergence(w, qv.family).is_zero());
    CHECK(is_trivial(w, qv.family));
    CHECK_FALSE(is_trivial_strict(w, qv.family));
  }
}

TEST_CASE("gauge freedom: adding a curl or a null pair keeps the law") {
  const auto cases = load_section5();
  const auto& cc = find_case(cases, "subcase2_4");
  const auto& v = entry(cases, "subcase2_4", "x");
  ConservedVector cv = conserved_vector(v.symmetry, v.family, cc.phi);
  cv.aux = v.aux;
  TotalDerivative td;
  const Poly a = parse_poly("u*u_x + x*exp(alpha*t)*u_y");
  ConservedVector curl = cv;
  curl.c[0] = cv.c[0] + td(a, Y);
  curl.c[1] = cv.c[1] - td(a, X);
  CHECK(divergence(curl, v.family).is_zero());
  CHECK(is_trivial(curl - cv, v.family));
  ConservedVector null_pair = cv;
  null_pair.c[2] = cv.c[2] + td(a, X);
  null_pair.c[0] = cv.c[0] - td(a, T);
  CHECK(divergence(null_pair, v.family).is_zero());
  CHECK(is_trivial(null_pair - cv, v.family));
}

TEST_CASE("the construction is linear in the generator and in the weight") {
  const auto cases = load_section5();
  const auto& cc = find_case(cases, "subcase2_3");
  const auto& vx = entry(cases, "subcase2_3", "x");
  const auto& vt = entry(cases, "subcase2_3", "t");
  const PDEFamily& fam = vx.family;
  const ConservedVector cx = conserved_vector(vx.symmetry, fam, cc.phi);
  const ConservedVector ct = conserved_vector(vt.symmetry, fam, cc.phi);
  const ConservedVector sum = conserved_vector(scale(vx.symmetry, Rational(3)) + scale(vt.symmetry, Rational(-1, 2)), fam, cc.phi);
  const ConservedVector expected = combine(cx, 3, ct, Rational(-1, 2));
  for (int i = 0; i < 3; ++i) CHECK(sum.c[i] == expected.c[i]);
  const ConservedVector scaled = conserved_vector(vx.symmetry, fam, scale(cc.phi, Rational(5, 7)));
  for (int i = 0; i < 3; ++i) CHECK(scaled.c[i] == scale(cx.c[i], Rational(5, 7)));
}

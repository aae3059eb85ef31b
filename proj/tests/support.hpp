#pragma once

// Random expressions for the property suites. Every generator is seeded so a
// failing case can be replayed from its seed.

#include <random>
#include <vector>

#include "gksym/conservation.hpp"
#include "gksym/dsl.hpp"

namespace gksym::testing {

class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational coefficient() {
    int num = 0;
    while (num == 0) num = uniform(-5, 5);
    return Rational(num, uniform(1, 4));
  }

  // u-jet of total order at most max_order.
  Poly jet_var(int max_order) {
    const auto& idx = indices(max_order);
    return jet(U, idx[uniform(0, static_cast<int>(idx.size()) - 1)]);
  }

  // Point-space factor: x, y, t, u, a parameter, or f(u) and friends.
  Poly point_factor(bool functions = true) {
    switch (uniform(0, functions ? 7 : 4)) {
      case 0: return indep(X);
      case 1: return indep(Y);
      case 2: return indep(T);
      case 3: return jet(U, {});
      case 4: return param(uniform(0, 1) ? "alpha" : "beta");
      case 5: return func_u("f", uniform(0, 2));
      case 6: return func_u("g", uniform(0, 1));
      default: return exp_of(scale(param("alpha"), coefficient()) * indep(T));
    }
  }

  // Sum of `terms` random monomials with up to `jets` jet factors each.
  Poly jet_poly(int terms, int max_order, int jets = 2, bool functions = true) {
    Poly out;
    for (int k = 0; k < terms; ++k) {
      Poly m = Poly(coefficient());
      for (int f = uniform(0, 2); f > 0; --f) m *= point_factor(functions);
      for (int f = uniform(0, jets); f > 0; --f) m *= jet_var(max_order);
      out += m;
    }
    return out;
  }

  // Function of x, y, t, u only.
  Poly point_poly(int terms) {
    Poly out;
    for (int k = 0; k < terms; ++k) {
      Poly m = Poly(coefficient());
      for (int f = uniform(0, 2); f > 0; --f) m *= point_factor(false);
      out += m;
    }
    return out;
  }

  Generator generator(int terms) {
    Generator g;
    for (auto& xi : g.xi) xi = point_poly(terms);
    g.eta = point_poly(terms);
    return g;
  }

 private:
  const std::vector<JetIndex>& indices(int max_order) {
    if (static_cast<int>(cache_.size()) <= max_order) cache_.resize(max_order + 1);
    if (cache_[max_order].empty()) cache_[max_order] = jet_indices_up_to(max_order);
    return cache_[max_order];
  }

  std::mt19937_64 rng_;
  std::vector<std::vector<JetIndex>> cache_;
};

}  // namespace gksym::testing

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<gksym::Poly> {
  static String convert(const gksym::Poly& p) { return gksym::print_poly(p).c_str(); }
};
}  // namespace doctest
#endif

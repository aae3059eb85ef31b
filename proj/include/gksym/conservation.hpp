#pragma once

#include <array>
#include <string>
#include <vector>

#include "gksym/adjoint.hpp"

namespace gksym {

// Combinatorial weights in the conserved-vector formula.
//   Corrected:         operator weight m(K)/m(I+K), and each multi-index J of
//                      D^J(W) counted m(J) times (once per ordered sequence).
//   PrintedFactorial:  m(K)/m(I+K) for K != 0, unweighted K = 0 term, each
//                      multi-index J counted once.
//   PrintedLiteral:    as PrintedFactorial with m(M) replaced by |M|/prod M_k!.
// with m(M) = |M|!/prod M_k! the multinomial coefficient.
enum class WeightConvention { Corrected, PrintedFactorial, PrintedLiteral };
const char* convention_name(WeightConvention c);

Rational multinomial(const JetIndex& m);

// Weighted variational derivative of L at the u-jet index I, truncated at
// total order max_order.
Poly weighted_euler_lagrange(const Poly& L, const JetIndex& I, WeightConvention conv = WeightConvention::Corrected,
                             int max_order = 4);

struct ConservedVector {
  std::array<Poly, 3> c;                   // components along x, y, t
  std::vector<ConstraintRule> aux;         // constraints on unknown functions in the weight
  std::string source = "formula";          // "formula" or "transcribed"

  bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
};

// Vector from the explicit formula with L = phi * Delta. Components are
// reduced on solutions when `on_solutions` is set.
ConservedVector conserved_vector(const Generator& X, const PDEFamily& fam, const Poly& phi,
                                 WeightConvention conv = WeightConvention::Corrected, bool on_solutions = true);

// Same construction for an arbitrary Lagrangian, without reduction.
ConservedVector noether_vector(const Generator& X, const Poly& L, WeightConvention conv = WeightConvention::Corrected);

// Independent construction by enumerating ordered derivative sequences with
// symmetrized partial derivatives.
ConservedVector classical_noether_vector(const Generator& X, const Poly& L);

// X(L) + L Div(xi) - W E(L) - Div(C) for a vector from noether_vector; zero
// for every generator and Lagrangian.
Poly noether_identity_defect(const Generator& X, const Poly& L, const ConservedVector& cv);

Poly raw_divergence(const ConservedVector& cv);

// Divergence on solutions of fam, rewritten by the aux constraints and the
// Pythagorean pass.
Poly divergence(const ConservedVector& cv, const PDEFamily& fam);

// Applies reduction on solutions, aux constraints and the Pythagorean pass.
Poly reduce_with_constraints(const Poly& e, const PDEFamily& fam, const std::vector<ConstraintRule>& aux);

// Trivial in the equivalence sense: the density on solutions lies in the
// kernel of the Euler-Lagrange operator (it is a spatial divergence).
bool is_trivial(const ConservedVector& cv, const PDEFamily& fam);
// Literal reading: unreduced divergence identically zero and every component
// vanishing on solutions.
bool is_trivial_strict(const ConservedVector& cv, const PDEFamily& fam);

ConservedVector operator-(const ConservedVector& a, const ConservedVector& b);

nlohmann::json vector_to_json(const ConservedVector& cv);

}  // namespace gksym

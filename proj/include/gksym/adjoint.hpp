#pragma once

#include <string>
#include <vector>

#include "gksym/symmetry.hpp"

namespace gksym {

// v * Delta with v the nonlocal variable.
Poly formal_lagrangian(const PDEFamily& fam);

// Variational derivative with respect to u or v, truncated at max_order
// (negative: the Lagrangian's own jet order in that variable).
Poly euler_lagrange(const Poly& L, int var, int max_order = -1);

// Adjoint expression, oriented so that the v_t coefficient is -1 and the
// fourth-order block is +v_xxxx + 2 v_xxyy + v_yyyy.
Poly adjoint_equation(const PDEFamily& fam);

enum class SelfAdjointMode { Strict, Quasi, Nonlinear };
const char* mode_name(SelfAdjointMode m);

struct SelfAdjointnessReport {
  SelfAdjointMode mode = SelfAdjointMode::Strict;
  Poly substitution;  // value used for v
  Poly residual;      // adjoint with v substituted, on solutions
  DeterminingSystem system;
  std::string verdict;                // "holds", "fails" or "holds-under-constraints"
  std::vector<Poly> constraints;      // conditions on f, g, h, r for holds-under-constraints
  std::vector<Poly> derived;          // further consequences (nonlinear mode)
  Poly witness_monomial;              // strict mode: monomial with a nonzero constant coefficient
  Rational witness_coefficient = 0;
};

// The adjoint with v -> value, reduced on solutions of fam.
Poly self_adjoint_residual(const PDEFamily& fam, const Poly& value);

SelfAdjointnessReport check_strict(const PDEFamily& fam);
SelfAdjointnessReport check_quasi(const PDEFamily& fam);
SelfAdjointnessReport check_nonlinear(const PDEFamily& fam);

// phi(u), phi(x,y,t,u) and phi(x,y,t) as unknown-function expressions.
Poly phi_of_u();
Poly phi_full();
Poly phi_xyt();

// Scalar condition left after phi = phi(x,y,t), r = u/2 + c, h = g' (with the
// remaining functions of fam left as they are).
Poly nonlinear_condition(const PDEFamily& fam, const Poly& phi);

nlohmann::json report_to_json(const SelfAdjointnessReport& r);

}  // namespace gksym

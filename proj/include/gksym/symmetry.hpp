#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gksym/pde.hpp"

namespace gksym {

// Point-symmetry candidate X = xi1 d_x + xi2 d_y + xi3 d_t + eta d_u.
struct Generator {
  std::string label;
  std::array<Poly, 3> xi;
  Poly eta;
  // Constraint PDEs on unknown functions appearing in the coefficients.
  std::vector<ConstraintRule> constraints;

  bool is_zero() const;
};

// Reads "a*d_x + b*d_y + c*d_t + e*d_u"; the expression must be linear in the markers.
Generator generator_from_poly(const Poly& p);
Generator parse_generator(const std::string& src, const ParseContext& ctx = ParseContext::standard());
Poly generator_to_poly(const Generator& g);
std::string print_generator(const Generator& g);
Generator operator+(const Generator& a, const Generator& b);
Generator scale(const Generator& a, const Rational& c);

// xi1(x,y,t,u), xi2, xi3, eta(x,y,t,u) as unknown functions.
Generator unknown_generator();

// Builds the rewrite rule for "equation = 0" on `function`, solved for its
// highest t-derivative (then x, then y). `solve_for` may name a node directly.
ConstraintRule solve_constraint(const Poly& equation, const std::string& function, const std::vector<Atom>& formal,
                                const Poly* solve_for = nullptr);

// Lazily evaluated prolongation coefficients via the recursive formula
// eta_J = D_i eta_{J-e_i} - sum_j (D_i xi^j) u_{J-e_i+e_j}.
class Prolongation {
 public:
  explicit Prolongation(const Generator& g);
  const Poly& eta(const JetIndex& j);
  // Same coefficient computed from the parent J - e_dir (for path-independence checks).
  Poly eta_from(const JetIndex& j, int dir);
  const Generator& generator() const { return g_; }

 private:
  const Poly& d_xi(int i, int dir);
  Generator g_;
  std::map<JetIndex, Poly> memo_;
  std::map<std::pair<int, int>, Poly> dxi_;
  TotalDerivative td_;
};

struct ProlongedGenerator {
  Generator base;
  std::map<JetIndex, Poly> eta_coeffs;  // orders 1..order
};

ProlongedGenerator prolong(const Generator& g, int order = 4);

// Characteristic W = eta - xi^i u_i.
Poly characteristic(const Generator& g);

// X^(n) applied to F, with n the highest u-jet order in F. Explicit dependence
// on x, y, t, u and on the jets is differentiated; v and parameters are inert.
Poly prolonged_action(const Generator& g, const Poly& F);
Poly prolonged_action(Prolongation& pr, const Poly& F);

// X^(4)[Delta] on solutions, with the generator's constraints applied.
Poly apply_lsc(const Generator& g, const PDEFamily& fam);

struct SymmetryCheck {
  bool holds = false;
  Poly residual;
};
SymmetryCheck check_symmetry(const Generator& g, const PDEFamily& fam);

// Set of expressions that must vanish identically, with the jet monomial each
// came from. Canonical form: monic, deduplicated, sorted.
struct DeterminingSystem {
  std::vector<Poly> equations;
  std::vector<Monomial> provenance;

  std::size_t size() const { return equations.size(); }
  // Index of an equation equal to e up to a nonzero rational factor, or -1.
  long find(const Poly& e) const;
};

DeterminingSystem make_system(const std::vector<std::pair<Poly, Monomial>>& raw);
DeterminingSystem split_to_system(const Poly& residual, int min_order = 1);
DeterminingSystem generate_determining_system(const PDEFamily& fam);

// Substitutes the ansatz for xi1, xi2, xi3, eta (functions of x, y, t, u).
// Every equation is further split by monomials in those split_atoms that do not
// occur inside a function argument of that equation.
DeterminingSystem substitute_ansatz(const DeterminingSystem& ds, const Generator& ansatz,
                                    const std::vector<Atom>& split_atoms = {});

// Membership of e in the rational span of the system's equations. Candidates
// are limited to equations sharing at least one monomial with e.
bool in_rational_span(const DeterminingSystem& ds, const Poly& e, std::vector<std::pair<long, Rational>>* combo = nullptr);

// Solves sum_k c_k cols[k] = target for rational constants c_k (treating every
// monomial as an independent coordinate).
bool solve_rational_span(const std::vector<Poly>& cols, const Poly& target, std::vector<Rational>* coeffs);

// Commutator [X, Y] acting on coefficient functions of (x, y, t, u).
Generator commutator(const Generator& a, const Generator& b);
// Coefficients c with target = sum c_k basis_k, if such rational constants exist.
bool rational_combination(const Generator& target, const std::vector<Generator>& basis, std::vector<Rational>* coeffs);

// Solves residual(param -> kappa) = 0 for kappa when the residual is linear in
// kappa after removing nonvanishing exponential factors. Returns nullopt when
// no unique rational-function value exists.
std::optional<Poly> solve_linear_parameter(const Poly& residual, const Atom& kappa);

}  // namespace gksym

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gksym/poly.hpp"

namespace gksym {

// Derivative of a polynomial given the derivative of each atom it contains.
// Atom derivatives are computed once per distinct atom node within the call.
using AtomDerivative = std::function<Poly(const Atom&)>;
Poly differentiate(const Poly& p, const AtomDerivative& d_atom);

// Partial derivative treating every atom other than `var` as independent.
// `var` may be an independent variable, jet coordinate, or parameter.
Poly partial(const Poly& p, const Atom& var);

// Total derivative D_dir with the jet chain rule. A TotalDerivative object
// caches per-atom results and may be reused across calls on one thread.
class TotalDerivative {
 public:
  Poly operator()(const Poly& p, int dir);
  // D^J applied to p (x first, then y, then t).
  Poly multi(const Poly& p, const JetIndex& j);

 private:
  std::array<std::unordered_map<const AtomNode*, std::pair<Atom, Poly>>, 3> memo_;
};

Poly total_derivative(const Poly& p, int dir);
Poly total_derivative(const Poly& p, const JetIndex& j);

// ---- substitution ----------------------------------------------------------

// Callback substitution: returns the replacement for an atom, or nullopt to keep
// it (kernel arguments are still visited). Results are memoized per atom node.
using AtomMap = std::function<std::optional<Poly>(const Atom&)>;
Poly substitute_atoms(const Poly& p, const AtomMap& map);

struct Rule {
  enum class Kind { Atom, DepVar, Function };
  Kind kind = Kind::Atom;
  Atom pattern;                 // Atom rules: parameter, independent variable or jet atom
  int variable = U;             // DepVar rules: u or v; every jet w_J maps to D^J(replacement)
  std::string function;         // Function rules: symbol name
  std::vector<Atom> formal;     // Function rules: formal argument atoms of the replacement
  Poly replacement;

  static Rule atom(const Atom& a, const Poly& r);
  static Rule dep_var(int var, const Poly& r);
  static Rule function_symbol(const std::string& name, std::vector<Atom> formal, const Poly& r);
};

// Simultaneous substitution. Function rules rewrite derivative nodes by
// differentiating the replacement; antiderivative nodes need an integrable
// replacement. Warnings (e.g. constant replacement of a function) are appended.
Poly substitute(const Poly& p, const std::vector<Rule>& rules, std::vector<std::string>* warnings = nullptr);

// Antiderivative of p with respect to var for the fragment used here:
// polynomial powers of var and one-argument function nodes of var.
Poly integrate(const Poly& p, const Atom& var);

// ---- unknown-function constraint rewriting ---------------------------------

// Constraint "F_L = rhs": any node of `function` whose derivative index covers
// `leading` is replaced by the matching derivative of rhs. The formal argument
// atoms must coincide with the node's actual arguments.
struct ConstraintRule {
  std::string function;
  std::vector<int> leading;
  std::vector<Atom> formal;
  Poly rhs;
};

// Applies rules (earlier rules take priority) until no node is reducible.
class ConstraintRewriter {
 public:
  explicit ConstraintRewriter(std::vector<ConstraintRule> rules);
  Poly operator()(const Poly& p);
  bool empty() const { return rules_.empty(); }
  const std::vector<ConstraintRule>& rules() const { return rules_; }

 private:
  std::optional<Poly> rewrite_node(const Atom& a);
  std::vector<ConstraintRule> rules_;
  std::map<Atom, std::optional<Poly>, AtomLess> memo_;
  int depth_ = 0;
};

// ---- coefficient collection ------------------------------------------------

// Splits p by monomials in jet atoms (u and v) of order >= min_order.
// The empty monomial collects the jet-free remainder. Throws DomainError when a
// jet of that order sits inside a kernel argument or under a non-integer power.
std::map<Monomial, Poly, MonomialLess> collect_jet_coefficients(const Poly& p, int min_order = 1);

// Splits by monomials in an arbitrary set of atoms selected by `pick`.
std::map<Monomial, Poly, MonomialLess> collect_by(const Poly& p, const std::function<bool(const AtomNode&)>& pick);

// Distinct atoms satisfying pred, searched recursively through kernel arguments.
std::vector<Atom> collect_atoms(const Poly& p, const std::function<bool(const AtomNode&)>& pred);

// p divided by the monomial common to all its terms (smallest exponent of every
// shared atom). Zero stays zero.
Poly remove_common_monomial(const Poly& p, const std::function<bool(const AtomNode&)>& removable = nullptr);

// Rewrites sin(a)^k (k >= 2) through sin^2 = 1 - cos^2.
Poly pythagorean_reduce(const Poly& p);

}  // namespace gksym

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gksym/calculus.hpp"
#include "gksym/dsl.hpp"

namespace gksym {

// One of the coefficient functions f, g, h, r: either the abstract symbol of u
// or a concrete expression in u (which may itself involve other symbols).
struct FuncSpec {
  bool abstract = true;
  Poly value;

  static FuncSpec symbol() { return {}; }
  static FuncSpec of(const Poly& p) { return {false, p}; }
};

struct ParamAssumption {
  std::string param;
  std::string sign;  // "positive" or "nonzero"
};

// The family  Delta = 1/2 u_x^2 + h(u) u_y^2 + r(u) u_xx + g(u) u_yy
//                     - u_xxxx - 2 u_xxyy - u_yyyy - u_t + f(u).
struct PDEFamily {
  std::string label = "generic";
  FuncSpec f, g, h, r;
  std::vector<ParamAssumption> assumptions;
  std::vector<std::string> side_conditions;  // free-text nondegeneracy conditions
  Poly delta;

  // Substitution rules turning abstract f, g, h, r into the concrete choices.
  std::vector<Rule> function_rules() const;
  // Applies function_rules() to an expression built for the abstract family.
  Poly specialize(const Poly& p) const;
  bool is_positive(const std::string& param) const;
};

Poly gks_delta_abstract();
PDEFamily build_gks(const FuncSpec& f, const FuncSpec& g, const FuncSpec& h, const FuncSpec& r);

struct NormalForm {
  Poly rhs;  // u_t = rhs
};
NormalForm normal_form(const PDEFamily& fam);

// Eliminates every u-jet with a t-derivative using the normal form. Results
// for t-jets are cached in the object; use one Reducer per thread.
class Reducer {
 public:
  explicit Reducer(const NormalForm& nf);
  Poly operator()(const Poly& e);
  // Reduced value of u_J for a jet with J.it >= 1.
  const Poly& t_jet(const JetIndex& j);
  const NormalForm& normal() const { return nf_; }

 private:
  NormalForm nf_;
  std::map<JetIndex, Poly> table_;
  TotalDerivative td_;
};

Poly reduce_on_solutions(const Poly& e, const NormalForm& nf);

// JSON form {f, g, h, r: "abstract" | expr, assumptions: [...], side_conditions: [...]}.
nlohmann::json family_to_json(const PDEFamily& fam);
PDEFamily family_from_json(const nlohmann::json& j, const ParseContext& ctx = ParseContext::standard());
// "generic" or "f=...;g=...;h=...;r=...;positive=alpha,c". Other spec forms are
// resolved by the golden-data layer.
PDEFamily parse_family_inline(const std::string& spec, const ParseContext& ctx = ParseContext::standard());

}  // namespace gksym

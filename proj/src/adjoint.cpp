#include "gksym/adjoint.hpp"

namespace gksym {

namespace {

Atom u_atom() { return jet_atom(U, {}); }

std::vector<Poly> args_of(std::initializer_list<int> dirs, bool with_u) {
  std::vector<Poly> out;
  for (int d : dirs) out.push_back(indep(d));
  if (with_u) out.push_back(Poly::from_atom(u_atom()));
  return out;
}

bool mentions(const Poly& p, const std::string& fname) {
  return any_atom(p, [&](const AtomNode& n) { return n.kind == AtomKind::Func && n.name == fname; });
}

// Factors that are nonzero by assumption: the constant c and the weight phi itself.
bool nonzero_factor(const AtomNode& n) {
  if (n.kind == AtomKind::Param) return n.name == "c";
  if (n.kind != AtomKind::Func || n.name != "phi") return false;
  for (int d : n.deriv)
    if (d != 0) return false;
  return true;
}

std::vector<Poly> nonzero_contents(const DeterminingSystem& ds, const std::vector<Rule>& rules) {
  std::vector<Poly> out;
  for (const auto& e : ds.equations) {
    Poly s = remove_common_monomial(substitute(e, rules), nonzero_factor);
    if (!s.is_zero()) out.push_back(make_monic(s));
  }
  return out;
}

std::vector<Poly> canonical_set(const std::vector<Poly>& eqs) {
  std::vector<std::pair<Poly, Monomial>> raw;
  for (const auto& e : eqs) raw.emplace_back(e, Monomial{});
  return make_system(raw).equations;
}

}  // namespace

Poly formal_lagrangian(const PDEFamily& fam) { return jet(V, JetIndex{}) * fam.delta; }

Poly euler_lagrange(const Poly& L, int var, int max_order) {
  if (max_order < 0) max_order = max_jet_order(L, var);
  auto jets = collect_atoms(L, [var](const AtomNode& n) { return n.kind == AtomKind::Jet && n.var == var; });
  TotalDerivative td;
  std::vector<Poly> parts;
  for (const auto& a : jets) {
    if (a->jet.order() > max_order) continue;
    Poly d = partial(L, a);
    if (d.is_zero()) continue;
    Poly term = td.multi(d, a->jet);
    parts.push_back(a->jet.order() % 2 ? -term : term);
  }
  return sum(parts);
}

Poly adjoint_equation(const PDEFamily& fam) { return -euler_lagrange(formal_lagrangian(fam), U); }

const char* mode_name(SelfAdjointMode m) {
  switch (m) {
    case SelfAdjointMode::Strict: return "strict";
    case SelfAdjointMode::Quasi: return "quasi";
    case SelfAdjointMode::Nonlinear: return "nonlinear";
  }
  return "?";
}

Poly phi_of_u() { return func("phi", {0}, args_of({}, true)); }
Poly phi_full() { return func("phi", {0, 0, 0, 0}, args_of({X, Y, T}, true)); }
Poly phi_xyt() { return func("phi", {0, 0, 0}, args_of({X, Y, T}, false)); }

Poly self_adjoint_residual(const PDEFamily& fam, const Poly& value) {
  if (value.is_zero()) throw DomainError("substitution for v must be nonzero");
  Poly adj = substitute(adjoint_equation(fam), {Rule::dep_var(V, value)});
  Reducer reduce(normal_form(fam));
  return reduce(adj);
}

SelfAdjointnessReport check_strict(const PDEFamily& fam) {
  SelfAdjointnessReport r;
  r.mode = SelfAdjointMode::Strict;
  r.substitution = Poly::from_atom(u_atom());
  r.residual = self_adjoint_residual(fam, r.substitution);
  r.system = split_to_system(r.residual, 1);
  auto coeffs = collect_jet_coefficients(r.residual, 1);
  const Monomial preferred = u_jet("xxxx").terms()[0].mono;
  for (const auto& [m, c] : coeffs) {
    if (!c.is_constant() || m.empty()) continue;
    if (r.witness_monomial.is_zero() || compare_monomials(m, preferred) == 0) {
      r.witness_monomial = mul_term(Poly(1), m, Rational(1));
      r.witness_coefficient = c.constant_value();
    }
  }
  r.verdict = r.residual.is_zero() ? "holds" : (r.witness_monomial.is_zero() ? "undecided" : "fails");
  return r;
}

SelfAdjointnessReport check_quasi(const PDEFamily& fam) {
  SelfAdjointnessReport r;
  r.mode = SelfAdjointMode::Quasi;
  r.substitution = phi_of_u();
  r.residual = self_adjoint_residual(fam, r.substitution);
  r.system = split_to_system(r.residual, 1);
  // Derivatives of phi vanish in the system, so phi is a nonzero constant.
  const std::vector<Rule> constant_phi = {Rule::function_symbol("phi", {u_atom()}, param("c"))};
  r.constraints = canonical_set(nonzero_contents(r.system, constant_phi));
  bool contradiction = false;
  for (const auto& c : r.constraints) contradiction = contradiction || c.is_constant();
  r.verdict = r.residual.is_zero() ? "holds" : (contradiction ? "fails" : "holds-under-constraints");
  return r;
}

SelfAdjointnessReport check_nonlinear(const PDEFamily& fam) {
  SelfAdjointnessReport r;
  r.mode = SelfAdjointMode::Nonlinear;
  r.substitution = phi_full();
  r.residual = self_adjoint_residual(fam, r.substitution);
  r.system = split_to_system(r.residual, 1);
  const auto xytu = std::vector<Atom>{indep_atom(X), indep_atom(Y), indep_atom(T), u_atom()};
  const std::vector<Rule> u_free = {Rule::function_symbol("phi", xytu, phi_xyt())};
  std::vector<Poly> free_part, with_phi;
  for (const auto& e : nonzero_contents(r.system, u_free)) (mentions(e, "phi") ? with_phi : free_part).push_back(e);
  r.constraints = canonical_set(free_part);
  bool contradiction = false;
  for (const auto& c : r.constraints) contradiction = contradiction || c.is_constant();
  // Intermediate solution r = u/2 + c, h = g'.
  const std::vector<Rule> first = {
      Rule::function_symbol("r", {u_atom()}, scale(Poly::from_atom(u_atom()), Rational(1, 2)) + param("c")),
      Rule::function_symbol("h", {u_atom()}, func_u("g", 1))};
  std::vector<Poly> left;
  for (const auto& e : with_phi) {
    Poly s = substitute(e, first);
    if (!s.is_zero()) left.push_back(make_monic(s));
  }
  left = canonical_set(left);
  for (const auto& c : left) {
    r.derived.push_back(c);
    Poly d1 = partial(c, u_atom());
    Poly d2 = partial(d1, u_atom());
    if (!d1.is_zero()) r.derived.push_back(make_monic(d1));
    if (!d2.is_zero()) r.derived.push_back(make_monic(d2));
  }
  r.verdict = r.residual.is_zero() ? "holds" : (contradiction ? "fails" : "holds-under-constraints");
  return r;
}

Poly nonlinear_condition(const PDEFamily& fam, const Poly& phi) {
  auto coeffs = collect_jet_coefficients(self_adjoint_residual(fam, phi), 1);
  auto it = coeffs.find(Monomial{});
  return it == coeffs.end() ? Poly() : it->second;
}

nlohmann::json report_to_json(const SelfAdjointnessReport& r) {
  nlohmann::json j;
  j["mode"] = mode_name(r.mode);
  j["substitution"] = print_poly(r.substitution);
  j["verdict"] = r.verdict;
  j["residual_terms"] = r.residual.size();
  j["system"] = nlohmann::json::array();
  for (std::size_t k = 0; k < r.system.size(); ++k)
    j["system"].push_back({{"equation", print_poly(r.system.equations[k])},
                           {"monomial", print_monomial(r.system.provenance[k])}});
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : r.constraints) j["constraints"].push_back(print_poly(c));
  j["derived"] = nlohmann::json::array();
  for (const auto& c : r.derived) j["derived"].push_back(print_poly(c));
  if (!r.witness_monomial.is_zero()) {
    j["witness"] = {{"monomial", print_poly(r.witness_monomial)}, {"coefficient", r.witness_coefficient.get_str()}};
  }
  return j;
}

}  // namespace gksym

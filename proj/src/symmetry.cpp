#include "gksym/symmetry.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gksym {

namespace {

Atom u_atom() { return jet_atom(U, {}); }

std::vector<Atom> xytu_atoms() { return {indep_atom(X), indep_atom(Y), indep_atom(T), u_atom()}; }

std::vector<Poly> xytu_args() {
  std::vector<Poly> out;
  for (const auto& a : xytu_atoms()) out.push_back(Poly::from_atom(a));
  return out;
}

void gather_atoms(const Poly& p, const std::function<bool(const AtomNode&)>& pick, std::set<Atom, AtomLess>* out) {
  for (const auto& a : collect_atoms(p, pick)) out->insert(a);
}

Poly apply_point_field(const Generator& g, const Poly& F) {
  std::vector<Poly> parts;
  for (int i = 0; i < 3; ++i)
    if (!g.xi[i].is_zero()) parts.push_back(g.xi[i] * partial(F, indep_atom(i)));
  if (!g.eta.is_zero()) parts.push_back(g.eta * partial(F, u_atom()));
  return sum(parts);
}

Poly constraint_lhs(const ConstraintRule& c) {
  std::vector<Poly> args;
  for (const auto& a : c.formal) args.push_back(Poly::from_atom(a));
  return func(c.function, c.leading, args) - c.rhs;
}

}  // namespace

bool Generator::is_zero() const {
  return xi[0].is_zero() && xi[1].is_zero() && xi[2].is_zero() && eta.is_zero();
}

Generator generator_from_poly(const Poly& p) {
  Generator g;
  auto groups = collect_by(p, [](const AtomNode& n) { return n.kind == AtomKind::Basis; });
  for (const auto& [key, coef] : groups) {
    if (key.factors.size() != 1 || key.factors[0].exp != Exponent(1))
      throw DomainError("generator must be linear in d_x, d_y, d_t, d_u");
    int k = key.factors[0].atom->var;
    if (k == 3)
      g.eta = coef;
    else
      g.xi[k] = coef;
  }
  return g;
}

Generator parse_generator(const std::string& src, const ParseContext& ctx) {
  std::vector<std::string> parts;
  std::stringstream ss(src);
  std::string item;
  while (std::getline(ss, item, ';')) parts.push_back(item);
  if (parts.empty()) throw ParseError("empty generator", {0, 0});
  Generator g = generator_from_poly(parse_poly(parts[0], ctx));
  for (std::size_t k = 1; k < parts.size(); ++k) {
    std::string text = parts[k];
    if (auto eq = text.find('='); eq != std::string::npos)
      text = "(" + text.substr(0, eq) + ") - (" + text.substr(eq + 1) + ")";
    Poly e = parse_poly(text, ctx);
    std::set<Atom, AtomLess> funcs;
    gather_atoms(e, [](const AtomNode& n) { return n.kind == AtomKind::Func; }, &funcs);
    std::set<std::string> names;
    for (const auto& f : funcs) names.insert(f->name);
    if (names.size() != 1) throw ParseError("constraint must involve exactly one unknown function", {0, src.size()});
    const std::string name = *names.begin();
    std::vector<Atom> formal;
    for (const auto& arg : (*funcs.begin())->args) {
      if (arg.size() != 1 || arg.terms()[0].mono.factors.size() != 1)
        throw ParseError("constraint function arguments must be variables", {0, src.size()});
      formal.push_back(arg.terms()[0].mono.factors[0].atom);
    }
    g.constraints.push_back(solve_constraint(e, name, formal));
  }
  return g;
}

Poly generator_to_poly(const Generator& g) {
  std::vector<Poly> parts;
  for (int i = 0; i < 3; ++i) parts.push_back(g.xi[i] * Poly::from_atom(basis_atom(i)));
  parts.push_back(g.eta * Poly::from_atom(basis_atom(3)));
  return sum(parts);
}

std::string print_generator(const Generator& g) {
  std::string s = print_poly(generator_to_poly(g));
  for (const auto& c : g.constraints) s += " ; " + print_poly(constraint_lhs(c)) + " = 0";
  return s;
}

Generator operator+(const Generator& a, const Generator& b) {
  Generator g;
  for (int i = 0; i < 3; ++i) g.xi[i] = a.xi[i] + b.xi[i];
  g.eta = a.eta + b.eta;
  g.constraints = a.constraints;
  g.constraints.insert(g.constraints.end(), b.constraints.begin(), b.constraints.end());
  return g;
}

Generator scale(const Generator& a, const Rational& c) {
  Generator g = a;
  for (auto& x : g.xi) x = scale(x, c);
  g.eta = scale(g.eta, c);
  return g;
}

Generator unknown_generator() {
  Generator g;
  g.label = "unknown";
  const auto args = xytu_args();
  const char* names[] = {"xi1", "xi2", "xi3"};
  for (int i = 0; i < 3; ++i) g.xi[i] = func(names[i], {0, 0, 0, 0}, args);
  g.eta = func("eta", {0, 0, 0, 0}, args);
  return g;
}

ConstraintRule solve_constraint(const Poly& equation, const std::string& function, const std::vector<Atom>& formal,
                                const Poly* solve_for) {
  std::set<Atom, AtomLess> nodes;
  gather_atoms(equation, [&](const AtomNode& n) { return n.kind == AtomKind::Func && n.name == function; }, &nodes);
  if (nodes.empty()) throw DomainError("constraint does not involve " + function);
  auto slot_of = [&](int dir) -> int {
    for (std::size_t k = 0; k < formal.size(); ++k)
      if (formal[k]->kind == AtomKind::Indep && formal[k]->var == dir) return static_cast<int>(k);
    return -1;
  };
  Atom lead;
  if (solve_for) {
    if (solve_for->size() != 1 || solve_for->terms()[0].mono.factors.size() != 1)
      throw DomainError("solve_for must be a single function node");
    lead = solve_for->terms()[0].mono.factors[0].atom;
  } else {
    const int order[] = {slot_of(T), slot_of(X), slot_of(Y)};
    auto key = [&](const Atom& a) {
      std::vector<int> k;
      for (int s : order) k.push_back(s >= 0 ? a->deriv[s] : 0);
      return k;
    };
    for (const auto& n : nodes)
      if (!lead || key(n) > key(lead)) lead = n;
  }
  auto groups = collect_by(equation, [&](const AtomNode& n) { return compare_atoms(n, *lead) == 0; });
  Monomial one;
  one.factors.push_back({lead, Exponent(1)});
  auto it = groups.find(one);
  if (it == groups.end() || !it->second.is_constant())
    throw DomainError("constraint is not linear with constant coefficient in its leading derivative");
  Poly rest;
  for (const auto& [k, c] : groups) {
    if (k.empty()) {
      rest += c;
    } else if (compare_monomials(k, one) != 0) {
      throw DomainError("constraint is nonlinear in its leading derivative");
    }
  }
  ConstraintRule rule;
  rule.function = function;
  rule.leading = lead->deriv;
  rule.formal = formal;
  rule.rhs = scale(rest, -1 / it->second.constant_value());
  return rule;
}

// ---------------------------------------------------------------------------

Prolongation::Prolongation(const Generator& g) : g_(g) {}

const Poly& Prolongation::d_xi(int i, int dir) {
  auto key = std::make_pair(i, dir);
  auto it = dxi_.find(key);
  if (it != dxi_.end()) return it->second;
  return dxi_.emplace(key, td_(g_.xi[i], dir)).first->second;
}

const Poly& Prolongation::eta(const JetIndex& j) {
  if (j.order() == 0) return g_.eta;
  auto it = memo_.find(j);
  if (it != memo_.end()) return it->second;
  int dir = j.it > 0 ? T : (j.iy > 0 ? Y : X);
  Poly value = eta_from(j, dir);
  return memo_.emplace(j, std::move(value)).first->second;
}

Poly Prolongation::eta_from(const JetIndex& j, int dir) {
  if (j[dir] == 0) throw DomainError("eta_from: index has no derivative in that direction");
  const JetIndex parent = j.plus(dir, -1);
  std::vector<Poly> parts;
  parts.push_back(td_(eta(parent), dir));
  for (int k = 0; k < 3; ++k) {
    const Poly& d = d_xi(k, dir);
    if (!d.is_zero()) parts.push_back(-(d * jet(U, parent.plus(k))));
  }
  return sum(parts);
}

ProlongedGenerator prolong(const Generator& g, int order) {
  if (order < 1 || order > 4) throw DomainError("prolongation order must be between 1 and 4");
  Prolongation pr(g);
  ProlongedGenerator out{g, {}};
  for (const auto& j : jet_indices_up_to(order)) out.eta_coeffs.emplace(j, pr.eta(j));
  return out;
}

Poly characteristic(const Generator& g) {
  std::vector<Poly> parts{g.eta};
  for (int i = 0; i < 3; ++i) parts.push_back(-(g.xi[i] * jet(U, JetIndex{}.plus(i))));
  return sum(parts);
}

Poly prolonged_action(Prolongation& pr, const Poly& F) {
  const Generator& g = pr.generator();
  std::vector<Poly> parts{apply_point_field(g, F)};
  std::set<Atom, AtomLess> jets;
  gather_atoms(F, [](const AtomNode& n) { return n.kind == AtomKind::Jet && n.var == U && n.jet.order() > 0; }, &jets);
  for (const auto& a : jets) {
    Poly dF = partial(F, a);
    if (!dF.is_zero()) parts.push_back(pr.eta(a->jet) * dF);
  }
  return sum(parts);
}

Poly prolonged_action(const Generator& g, const Poly& F) {
  Prolongation pr(g);
  return prolonged_action(pr, F);
}

Poly apply_lsc(const Generator& g, const PDEFamily& fam) {
  Generator gs = g;
  for (auto& x : gs.xi) x = fam.specialize(x);
  gs.eta = fam.specialize(gs.eta);
  Poly action = prolonged_action(gs, fam.delta);
  Reducer reduce(normal_form(fam));
  Poly r = reduce(action);
  if (!g.constraints.empty()) {
    ConstraintRewriter rw(g.constraints);
    r = rw(r);
  }
  return r;
}

SymmetryCheck check_symmetry(const Generator& g, const PDEFamily& fam) {
  SymmetryCheck c;
  c.residual = apply_lsc(g, fam);
  c.holds = c.residual.is_zero();
  return c;
}

// ---------------------------------------------------------------------------

long DeterminingSystem::find(const Poly& e) const {
  Poly m = make_monic(e);
  auto it = std::lower_bound(equations.begin(), equations.end(), m, PolyLess{});
  if (it == equations.end() || *it != m) return -1;
  return static_cast<long>(it - equations.begin());
}

DeterminingSystem make_system(const std::vector<std::pair<Poly, Monomial>>& raw) {
  std::map<Poly, Monomial, PolyLess> unique;
  for (const auto& [e, m] : raw) {
    if (e.is_zero()) continue;
    unique.emplace(make_monic(e), m);
  }
  DeterminingSystem ds;
  for (auto& [e, m] : unique) {
    ds.equations.push_back(e);
    ds.provenance.push_back(m);
  }
  return ds;
}

DeterminingSystem split_to_system(const Poly& residual, int min_order) {
  std::vector<std::pair<Poly, Monomial>> raw;
  for (auto& [m, c] : collect_jet_coefficients(residual, min_order)) raw.emplace_back(c, m);
  return make_system(raw);
}

DeterminingSystem generate_determining_system(const PDEFamily& fam) {
  return split_to_system(apply_lsc(unknown_generator(), fam), 1);
}

DeterminingSystem substitute_ansatz(const DeterminingSystem& ds, const Generator& ansatz,
                                    const std::vector<Atom>& split_atoms) {
  const auto formal = xytu_atoms();
  std::vector<Rule> rules = {Rule::function_symbol("xi1", formal, ansatz.xi[0]),
                             Rule::function_symbol("xi2", formal, ansatz.xi[1]),
                             Rule::function_symbol("xi3", formal, ansatz.xi[2]),
                             Rule::function_symbol("eta", formal, ansatz.eta)};
  ConstraintRewriter rw(ansatz.constraints);
  std::vector<std::pair<Poly, Monomial>> raw;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    Poly e = substitute(ds.equations[k], rules);
    if (!rw.empty()) e = rw(e);
    if (split_atoms.empty()) {
      raw.emplace_back(e, ds.provenance[k]);
      continue;
    }
    // One atom at a time; an atom that also occurs inside a function argument
    // of a piece leaves that piece unsplit.
    std::vector<std::pair<Poly, Monomial>> pieces{{e, ds.provenance[k]}};
    for (const auto& a : split_atoms) {
      std::vector<std::pair<Poly, Monomial>> next;
      for (auto& [piece, prov] : pieces) {
        auto nested = collect_atoms(piece, [&](const AtomNode& n) {
          for (const auto& arg : n.args)
            if (contains_atom(arg, a)) return true;
          return false;
        });
        if (!nested.empty()) {
          next.emplace_back(piece, prov);
          continue;
        }
        for (auto& [m, c] : collect_by(piece, [&](const AtomNode& n) { return compare_atoms(*a, n) == 0; }))
          next.emplace_back(c, multiply(prov, m));
      }
      pieces = std::move(next);
    }
    raw.insert(raw.end(), pieces.begin(), pieces.end());
  }
  return make_system(raw);
}

// ---------------------------------------------------------------------------

namespace {

using SparseVec = std::map<int, Rational>;

void axpy(SparseVec& v, const Rational& a, const SparseVec& w) {
  for (const auto& [k, x] : w) {
    Rational& slot = v[k];
    slot += a * x;
    if (slot == 0) v.erase(k);
  }
}

struct EchelonRow {
  int pivot;
  SparseVec vec;
  SparseVec combo;
};

}  // namespace

bool solve_rational_span(const std::vector<Poly>& cols, const Poly& target, std::vector<Rational>* coeffs) {
  std::map<Monomial, int, MonomialLess> index;
  auto to_vec = [&](const Poly& p) {
    SparseVec v;
    for (const auto& t : p.terms()) {
      auto [it, fresh] = index.emplace(t.mono, static_cast<int>(index.size()));
      v[it->second] = t.coef;
    }
    return v;
  };
  std::vector<EchelonRow> rows;
  auto reduce = [&](SparseVec& v, SparseVec& combo) {
    for (const auto& r : rows) {
      auto it = v.find(r.pivot);
      if (it == v.end()) continue;
      Rational f = it->second / r.vec.at(r.pivot);
      axpy(v, -f, r.vec);
      axpy(combo, -f, r.combo);
    }
  };
  for (std::size_t k = 0; k < cols.size(); ++k) {
    SparseVec v = to_vec(cols[k]);
    SparseVec combo{{static_cast<int>(k), Rational(1)}};
    reduce(v, combo);
    if (v.empty()) continue;
    int pivot = v.begin()->first;
    rows.push_back({pivot, std::move(v), std::move(combo)});
  }
  SparseVec v = to_vec(target);
  SparseVec combo;
  reduce(v, combo);
  if (!v.empty()) return false;
  if (coeffs) {
    coeffs->assign(cols.size(), Rational(0));
    for (const auto& [k, c] : combo) (*coeffs)[k] = -c;
  }
  return true;
}

bool in_rational_span(const DeterminingSystem& ds, const Poly& e, std::vector<std::pair<long, Rational>>* combo) {
  if (e.is_zero()) {
    if (combo) combo->clear();
    return true;
  }
  if (long k = ds.find(e); k >= 0) {
    if (combo) *combo = {{k, leading_coefficient(e)}};
    return true;
  }
  std::set<Monomial, MonomialLess> monos;
  for (const auto& t : e.terms()) monos.insert(t.mono);
  std::vector<long> picked;
  std::vector<bool> used(ds.size(), false);
  // Two rounds: equations touching e, then equations touching those.
  for (int round = 0; round < 2; ++round) {
    std::set<Monomial, MonomialLess> next = monos;
    for (std::size_t k = 0; k < ds.size(); ++k) {
      if (used[k]) continue;
      bool hit = false;
      for (const auto& t : ds.equations[k].terms())
        if (monos.count(t.mono)) {
          hit = true;
          break;
        }
      if (!hit) continue;
      used[k] = true;
      picked.push_back(static_cast<long>(k));
      for (const auto& t : ds.equations[k].terms()) next.insert(t.mono);
    }
    monos = std::move(next);
  }
  std::vector<Poly> cols;
  for (long k : picked) cols.push_back(ds.equations[k]);
  std::vector<Rational> c;
  if (!solve_rational_span(cols, e, &c)) return false;
  if (combo) {
    combo->clear();
    for (std::size_t i = 0; i < picked.size(); ++i)
      if (c[i] != 0) combo->emplace_back(picked[i], c[i]);
  }
  return true;
}

Generator commutator(const Generator& a, const Generator& b) {
  Generator g;
  for (int i = 0; i < 3; ++i) g.xi[i] = apply_point_field(a, b.xi[i]) - apply_point_field(b, a.xi[i]);
  g.eta = apply_point_field(a, b.eta) - apply_point_field(b, a.eta);
  g.constraints = a.constraints;
  g.constraints.insert(g.constraints.end(), b.constraints.begin(), b.constraints.end());
  if (!g.constraints.empty()) {
    ConstraintRewriter rw(g.constraints);
    for (auto& x : g.xi) x = rw(x);
    g.eta = rw(g.eta);
  }
  return g;
}

bool rational_combination(const Generator& target, const std::vector<Generator>& basis, std::vector<Rational>* coeffs) {
  std::vector<Poly> cols;
  for (const auto& b : basis) cols.push_back(generator_to_poly(b));
  return solve_rational_span(cols, generator_to_poly(target), coeffs);
}

std::optional<Poly> solve_linear_parameter(const Poly& residual, const Atom& kappa) {
  if (residual.is_zero()) return std::nullopt;
  auto groups = collect_jet_coefficients(residual, 1);
  for (const auto& [key, coef] : groups) {
    Poly reduced = remove_common_monomial(coef, [&](const AtomNode& n) { return compare_atoms(n, *kappa) != 0; });
    Poly a, b;
    bool linear = true;
    for (const auto& t : reduced.terms()) {
      Exponent d = degree_of(t.mono, kappa);
      bool inner = false;
      for (const auto& f : t.mono.factors)
        for (const auto& arg : f.atom->args) inner = inner || contains_atom(arg, kappa);
      if (inner || !(d == Exponent(0) || d == Exponent(1))) {
        linear = false;
        break;
      }
      Poly term = mul_term(Poly(1), d.is_zero() ? t.mono : bump(t.mono, kappa, -d), t.coef);
      if (d == Exponent(1))
        a += term;
      else
        b += term;
    }
    if (!linear || a.is_zero()) continue;
    Poly cand = -(b / a);
    bool pure = !any_atom(cand, [](const AtomNode& n) {
      return n.kind == AtomKind::Jet || n.kind == AtomKind::Indep || n.kind == AtomKind::Func;
    });
    if (!pure || contains_atom(cand, kappa)) continue;
    if (substitute(residual, {Rule::atom(kappa, cand)}).is_zero()) return cand;
  }
  return std::nullopt;
}

}  // namespace gksym

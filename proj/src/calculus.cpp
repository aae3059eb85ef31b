#include "gksym/calculus.hpp"

#include <algorithm>
#include <set>

namespace gksym {

namespace {

// d(atom) for kernel atoms whose argument derivative is known.
Poly kernel_chain(const Atom& a, const std::function<Poly(const Poly&)>& d_arg) {
  switch (a->kind) {
    case AtomKind::Func: {
      std::vector<Poly> parts;
      for (std::size_t k = 0; k < a->args.size(); ++k) {
        Poly da = d_arg(a->args[k]);
        if (da.is_zero()) continue;
        std::vector<int> deriv = a->deriv;
        deriv[k] += 1;
        parts.push_back(func(a->name, std::move(deriv), a->args) * da);
      }
      return sum(parts);
    }
    case AtomKind::Exp: {
      Poly da = d_arg(a->args[0]);
      if (da.is_zero()) return Poly();
      return Poly::from_atom(a) * da;
    }
    case AtomKind::Sin: {
      Poly da = d_arg(a->args[0]);
      if (da.is_zero()) return Poly();
      return cos_of(a->args[0]) * da;
    }
    case AtomKind::Cos: {
      Poly da = d_arg(a->args[0]);
      if (da.is_zero()) return Poly();
      return -(sin_of(a->args[0]) * da);
    }
    case AtomKind::PowBase:
      return d_arg(a->args[0]);
    default:
      return Poly();
  }
}

bool is_kernel(AtomKind k) {
  return k == AtomKind::Func || k == AtomKind::Exp || k == AtomKind::Sin || k == AtomKind::Cos ||
         k == AtomKind::PowBase;
}

}  // namespace

Poly differentiate(const Poly& p, const AtomDerivative& d_atom) {
  if (p.is_zero()) return p;
  std::unordered_map<const AtomNode*, Poly> memo;
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.mono.factors.size(); ++i) {
      const Factor& f = t.mono.factors[i];
      auto it = memo.find(f.atom.get());
      if (it == memo.end()) it = memo.emplace(f.atom.get(), d_atom(f.atom)).first;
      const Poly& da = it->second;
      if (da.is_zero()) continue;
      Monomial rest;
      rest.factors.reserve(t.mono.factors.size());
      for (std::size_t j = 0; j < t.mono.factors.size(); ++j) {
        if (j != i) rest.factors.push_back(t.mono.factors[j]);
        else if (!(f.exp == Exponent(1))) rest.factors.push_back({f.atom, f.exp - Exponent(1)});
      }
      Rational c = t.coef * f.exp.to_rational();
      for (const auto& dt : da.terms()) out.push_back({multiply(rest, dt.mono), c * dt.coef});
    }
  }
  return Poly::from_terms(std::move(out));
}

Poly partial(const Poly& p, const Atom& var) {
  std::function<Poly(const Atom&)> d_atom;
  std::function<Poly(const Poly&)> d_arg = [&](const Poly& q) { return differentiate(q, d_atom); };
  d_atom = [&](const Atom& a) -> Poly {
    if (compare_atoms(a, var) == 0) return Poly(1);
    if (is_kernel(a->kind)) return kernel_chain(a, d_arg);
    return Poly();
  };
  return differentiate(p, d_atom);
}

Poly TotalDerivative::operator()(const Poly& p, int dir) {
  auto& memo = memo_[static_cast<std::size_t>(dir)];
  std::function<Poly(const Atom&)> d_atom;
  std::function<Poly(const Poly&)> d_arg = [&](const Poly& q) { return differentiate(q, d_atom); };
  d_atom = [&](const Atom& a) -> Poly {
    switch (a->kind) {
      case AtomKind::Indep:
        return a->var == dir ? Poly(1) : Poly();
      case AtomKind::Jet:
        return jet(a->var, a->jet.plus(dir));
      case AtomKind::Param:
      case AtomKind::NumBase:
      case AtomKind::Basis:
        return Poly();
      default: {
        auto it = memo.find(a.get());
        if (it != memo.end()) return it->second.second;
        Poly r = kernel_chain(a, d_arg);
        memo.emplace(a.get(), std::make_pair(a, r));
        return r;
      }
    }
  };
  return differentiate(p, d_atom);
}

Poly TotalDerivative::multi(const Poly& p, const JetIndex& j) {
  Poly r = p;
  for (int k = 0; k < j.ix; ++k) r = (*this)(r, X);
  for (int k = 0; k < j.iy; ++k) r = (*this)(r, Y);
  for (int k = 0; k < j.it; ++k) r = (*this)(r, T);
  return r;
}

Poly total_derivative(const Poly& p, int dir) {
  TotalDerivative d;
  return d(p, dir);
}

Poly total_derivative(const Poly& p, const JetIndex& j) {
  TotalDerivative d;
  return d.multi(p, j);
}

// ---------------------------------------------------------------------------
// substitution

namespace {

Atom rebuild_kernel(const Atom& a, std::vector<Poly> args, Poly* as_poly) {
  switch (a->kind) {
    case AtomKind::Func:
      *as_poly = func(a->name, a->deriv, std::move(args));
      return nullptr;
    case AtomKind::Exp:
      *as_poly = exp_of(args[0]);
      return nullptr;
    case AtomKind::Sin:
      *as_poly = sin_of(args[0]);
      return nullptr;
    case AtomKind::Cos:
      *as_poly = cos_of(args[0]);
      return nullptr;
    case AtomKind::PowBase:
      *as_poly = args[0];  // exponent applied by the caller through the monomial
      return nullptr;
    default:
      return a;
  }
}

}  // namespace

Poly substitute_atoms(const Poly& p, const AtomMap& map) {
  std::unordered_map<const AtomNode*, std::optional<Poly>> memo;
  std::function<Poly(const Poly&)> go;
  std::function<const std::optional<Poly>&(const Atom&)> repl = [&](const Atom& a) -> const std::optional<Poly>& {
    auto it = memo.find(a.get());
    if (it != memo.end()) return it->second;
    std::optional<Poly> r = map(a);
    if (!r && is_kernel(a->kind)) {
      bool changed = false;
      std::vector<Poly> args;
      for (const auto& arg : a->args) {
        Poly na = go(arg);
        if (!na.shares_storage(arg) && na != arg) changed = true;
        args.push_back(std::move(na));
      }
      if (changed) {
        Poly rebuilt;
        rebuild_kernel(a, std::move(args), &rebuilt);
        r = rebuilt;
      }
    }
    return memo.emplace(a.get(), std::move(r)).first->second;
  };
  go = [&](const Poly& q) -> Poly {
    bool any = false;
    for (const auto& t : q.terms()) {
      for (const auto& f : t.mono.factors)
        if (repl(f.atom)) {
          any = true;
          break;
        }
      if (any) break;
    }
    if (!any) return q;
    std::vector<Poly> parts;
    std::vector<Term> untouched;
    for (const auto& t : q.terms()) {
      Monomial keep;
      Poly prod(1);
      bool hit = false;
      for (const auto& f : t.mono.factors) {
        const auto& r = repl(f.atom);
        if (!r) {
          keep.factors.push_back(f);
          continue;
        }
        hit = true;
        prod = prod * pow(*r, f.exp);
        if (prod.is_zero()) break;
      }
      if (!hit) {
        untouched.push_back(t);
        continue;
      }
      if (prod.is_zero()) continue;
      parts.push_back(mul_term(prod, keep, t.coef));
    }
    parts.push_back(Poly::from_terms(std::move(untouched)));
    return sum(parts);
  };
  return go(p);
}

Rule Rule::atom(const Atom& a, const Poly& r) {
  Rule x;
  x.kind = Kind::Atom;
  x.pattern = a;
  x.replacement = r;
  return x;
}

Rule Rule::dep_var(int var, const Poly& r) {
  Rule x;
  x.kind = Kind::DepVar;
  x.variable = var;
  x.replacement = r;
  return x;
}

Rule Rule::function_symbol(const std::string& name, std::vector<Atom> formal, const Poly& r) {
  Rule x;
  x.kind = Kind::Function;
  x.function = name;
  x.formal = std::move(formal);
  x.replacement = r;
  return x;
}

Poly integrate(const Poly& p, const Atom& var) {
  std::vector<Poly> parts;
  for (const auto& t : p.terms()) {
    Exponent k = degree_of(t.mono, var);
    Monomial rest = k.is_zero() ? t.mono : bump(t.mono, var, -k);
    Poly restp = Poly::from_canonical({Term{rest, Rational(1)}});
    // Remaining dependence on var must come from a single function node of var.
    int dependent_nodes = 0;
    const Factor* node = nullptr;
    for (const auto& f : rest.factors) {
      bool dep = compare_atoms(f.atom, var) == 0;
      for (const auto& a : f.atom->args) dep = dep || contains_atom(a, var);
      if (dep) {
        ++dependent_nodes;
        node = &f;
      }
    }
    if (dependent_nodes == 0) {
      if (k == Exponent(-1)) throw DomainError("logarithmic antiderivative is not supported");
      Exponent k1 = k + Exponent(1);
      parts.push_back(scale(restp * Poly::from_atom(var, k1), t.coef / k1.to_rational()));
      continue;
    }
    const AtomNode& n = *node->atom;
    bool simple = k.is_zero() && dependent_nodes == 1 && node->exp == Exponent(1) && n.kind == AtomKind::Func &&
                  n.args.size() == 1 && n.args[0] == Poly::from_atom(var);
    if (!simple) throw DomainError("cannot integrate expression with respect to " + atom_debug_name(*var));
    Monomial others = bump(rest, node->atom, Exponent(-1));
    Poly anti = func(n.name, {n.deriv[0] - 1}, n.args);
    parts.push_back(mul_term(anti, others, t.coef));
  }
  return sum(parts);
}

namespace {

struct FunctionRuleCache {
  const Rule* rule;
  std::map<std::vector<int>, Poly> derivs;  // derivative index -> replacement derivative (formal args)
};

Poly function_rule_derivative(FunctionRuleCache& c, const std::vector<int>& d) {
  auto it = c.derivs.find(d);
  if (it != c.derivs.end()) return it->second;
  const Rule& r = *c.rule;
  Poly out;
  if (d.size() == 1 && d[0] < 0) {
    Poly base = r.replacement;
    for (int k = 0; k < -d[0]; ++k) base = integrate(base, r.formal[0]);
    out = base;
  } else {
    // reduce one index from the last nonzero slot
    std::size_t slot = d.size();
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] > 0) slot = k;
    if (slot == d.size()) {
      out = r.replacement;
    } else {
      std::vector<int> lower = d;
      lower[slot] -= 1;
      out = partial(function_rule_derivative(c, lower), r.formal[slot]);
    }
  }
  c.derivs.emplace(d, out);
  return out;
}

}  // namespace

Poly substitute(const Poly& p, const std::vector<Rule>& rules, std::vector<std::string>* warnings) {
  std::vector<FunctionRuleCache> fcache;
  for (const auto& r : rules) {
    if (r.kind == Rule::Kind::Function) {
      fcache.push_back({&r, {}});
      if (warnings) {
        bool depends = false;
        for (const auto& f : r.formal) depends = depends || contains_atom(r.replacement, f);
        if (!depends)
          warnings->push_back("replacement for " + r.function + " does not depend on its declared arguments");
      }
    }
  }
  std::vector<std::pair<int, std::map<JetIndex, Poly>>> dep_cache;
  for (const auto& r : rules)
    if (r.kind == Rule::Kind::DepVar) dep_cache.push_back({r.variable, {{JetIndex{}, r.replacement}}});
  TotalDerivative td;

  std::function<Poly(int, const JetIndex&)> dep_jet = [&](int var, const JetIndex& j) -> Poly {
    for (auto& [v, cache] : dep_cache) {
      if (v != var) continue;
      auto it = cache.find(j);
      if (it != cache.end()) return it->second;
      int dir = j.ix > 0 ? X : (j.iy > 0 ? Y : T);
      JetIndex lower = j.plus(dir, -1);
      Poly r = td(dep_jet(var, lower), dir);
      cache.emplace(j, r);
      return r;
    }
    return Poly();
  };

  AtomMap map = [&](const Atom& a) -> std::optional<Poly> {
    for (const auto& r : rules) {
      switch (r.kind) {
        case Rule::Kind::Atom:
          if (compare_atoms(a, r.pattern) == 0) return r.replacement;
          break;
        case Rule::Kind::DepVar:
          if (a->kind == AtomKind::Jet && a->var == r.variable) return dep_jet(a->var, a->jet);
          break;
        case Rule::Kind::Function:
          if (a->kind == AtomKind::Func && a->name == r.function) {
            if (a->args.size() != r.formal.size())
              throw DomainError("arity mismatch substituting function " + r.function);
            FunctionRuleCache* c = nullptr;
            for (auto& fc : fcache)
              if (fc.rule == &r) c = &fc;
            Poly d = function_rule_derivative(*c, a->deriv);
            // map formal arguments to the actual (already substituted) arguments
            std::vector<Rule> argrules;
            bool identity = true;
            for (std::size_t k = 0; k < r.formal.size(); ++k) {
              Poly actual = substitute(a->args[k], rules, nullptr);
              if (actual != Poly::from_atom(r.formal[k])) identity = false;
              argrules.push_back(Rule::atom(r.formal[k], actual));
            }
            if (identity) return d;
            AtomMap argmap = [&](const Atom& b) -> std::optional<Poly> {
              for (const auto& ar : argrules)
                if (compare_atoms(b, ar.pattern) == 0) return ar.replacement;
              return std::nullopt;
            };
            return substitute_atoms(d, argmap);
          }
          break;
      }
    }
    return std::nullopt;
  };
  return substitute_atoms(p, map);
}

// ---------------------------------------------------------------------------
// constraints

ConstraintRewriter::ConstraintRewriter(std::vector<ConstraintRule> rules) : rules_(std::move(rules)) {}

std::optional<Poly> ConstraintRewriter::rewrite_node(const Atom& a) {
  if (a->kind != AtomKind::Func) return std::nullopt;
  auto it = memo_.find(a);
  if (it != memo_.end()) return it->second;
  std::optional<Poly> result;
  for (const auto& r : rules_) {
    if (r.function != a->name || r.leading.size() != a->deriv.size()) continue;
    bool covers = true;
    for (std::size_t k = 0; k < r.leading.size(); ++k) covers = covers && a->deriv[k] >= r.leading[k];
    if (!covers) continue;
    for (std::size_t k = 0; k < r.formal.size(); ++k)
      if (a->args[k] != Poly::from_atom(r.formal[k]))
        throw DomainError("constraint on " + r.function + " applied to non-formal arguments");
    Poly d = r.rhs;
    for (std::size_t k = 0; k < r.leading.size(); ++k)
      for (int n = 0; n < a->deriv[k] - r.leading[k]; ++n) d = partial(d, r.formal[k]);
    if (++depth_ > 200) throw ResourceError("constraint rewriting does not terminate");
    d = (*this)(d);
    --depth_;
    result = d;
    break;
  }
  memo_.emplace(a, result);
  return result;
}

Poly ConstraintRewriter::operator()(const Poly& p) {
  if (rules_.empty()) return p;
  return substitute_atoms(p, [&](const Atom& a) { return rewrite_node(a); });
}

// ---------------------------------------------------------------------------
// collection

std::map<Monomial, Poly, MonomialLess> collect_by(const Poly& p, const std::function<bool(const AtomNode&)>& pick) {
  std::map<Monomial, std::vector<Term>, MonomialLess> groups;
  for (const auto& t : p.terms()) {
    Monomial key, rest;
    for (const auto& f : t.mono.factors) {
      if (pick(*f.atom)) {
        if (!f.exp.is_integer() || f.exp.num < 0)
          throw DomainError("non-polynomial dependence on " + atom_debug_name(*f.atom));
        key.factors.push_back(f);
      } else {
        for (const auto& arg : f.atom->args)
          if (any_atom(arg, pick))
            throw DomainError("collected atom inside kernel " + atom_debug_name(*f.atom));
        rest.factors.push_back(f);
      }
    }
    groups[key].push_back({std::move(rest), t.coef});
  }
  std::map<Monomial, Poly, MonomialLess> out;
  for (auto& [k, terms] : groups) {
    Poly c = Poly::from_terms(std::move(terms));
    if (!c.is_zero()) out.emplace(k, std::move(c));
  }
  return out;
}

std::map<Monomial, Poly, MonomialLess> collect_jet_coefficients(const Poly& p, int min_order) {
  return collect_by(p, [min_order](const AtomNode& n) {
    return n.kind == AtomKind::Jet && n.jet.order() >= min_order;
  });
}

namespace {

void gather(const Poly& p, const std::function<bool(const AtomNode&)>& pred, std::set<Atom, AtomLess>* out) {
  for (const auto& t : p.terms())
    for (const auto& f : t.mono.factors) {
      if (pred(*f.atom)) out->insert(f.atom);
      for (const auto& arg : f.atom->args) gather(arg, pred, out);
    }
}

}  // namespace

std::vector<Atom> collect_atoms(const Poly& p, const std::function<bool(const AtomNode&)>& pred) {
  std::set<Atom, AtomLess> found;
  gather(p, pred, &found);
  return {found.begin(), found.end()};
}

Poly remove_common_monomial(const Poly& p, const std::function<bool(const AtomNode&)>& removable) {
  if (p.is_zero()) return p;
  std::vector<Factor> common;
  for (const auto& f : p.terms()[0].mono.factors)
    if (!removable || removable(*f.atom)) common.push_back(f);
  for (const auto& t : p.terms()) {
    std::vector<Factor> keep;
    for (const auto& f : common)
      for (const auto& g : t.mono.factors)
        if (compare_atoms(f.atom, g.atom) == 0) keep.push_back({f.atom, std::min(f.exp, g.exp)});
    common = std::move(keep);
  }
  if (common.empty()) return p;
  Monomial inv;
  for (const auto& f : common) inv.factors.push_back({f.atom, -f.exp});
  return mul_term(p, inv, Rational(1));
}

Poly pythagorean_reduce(const Poly& p) {
  std::vector<Poly> parts;
  std::vector<Term> plain;
  for (const auto& t : p.terms()) {
    bool hit = false;
    for (const auto& f : t.mono.factors)
      if (f.atom->kind == AtomKind::Sin && f.exp.is_integer() && f.exp.num >= 2) hit = true;
    if (!hit) {
      plain.push_back(t);
      continue;
    }
    Monomial rest;
    Poly prod(1);
    for (const auto& f : t.mono.factors) {
      if (f.atom->kind == AtomKind::Sin && f.exp.is_integer() && f.exp.num >= 2) {
        std::int64_t k = f.exp.num;
        if (k % 2) rest.factors.push_back({f.atom, Exponent(1)});
        Poly c = cos_of(f.atom->args[0]);
        prod = prod * pow(Poly(1) - c * c, Exponent(k / 2));
      } else {
        rest.factors.push_back(f);
      }
    }
    parts.push_back(mul_term(prod, rest, t.coef));
  }
  parts.push_back(Poly::from_terms(std::move(plain)));
  return sum(parts);
}

}  // namespace gksym

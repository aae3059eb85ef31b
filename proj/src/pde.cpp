#include "gksym/pde.hpp"

#include <cctype>
#include <sstream>

namespace gksym {

Poly gks_delta_abstract() {
  static const Poly delta = [] {
    Poly ux = u_jet("x"), uy = u_jet("y");
    return scale(ux * ux, Rational(1, 2)) + func_u("h") * uy * uy + func_u("r") * u_jet("xx") +
           func_u("g") * u_jet("yy") - u_jet("xxxx") - scale(u_jet("xxyy"), 2) - u_jet("yyyy") - u_jet("t") +
           func_u("f");
  }();
  return delta;
}

std::vector<Rule> PDEFamily::function_rules() const {
  std::vector<Rule> rules;
  const Atom u = jet_atom(U, {});
  const std::pair<const char*, const FuncSpec*> specs[] = {{"f", &f}, {"g", &g}, {"h", &h}, {"r", &r}};
  for (const auto& [name, spec] : specs)
    if (!spec->abstract) rules.push_back(Rule::function_symbol(name, {u}, spec->value));
  return rules;
}

Poly PDEFamily::specialize(const Poly& p) const {
  auto rules = function_rules();
  if (rules.empty()) return p;
  return substitute(p, rules);
}

bool PDEFamily::is_positive(const std::string& param) const {
  for (const auto& a : assumptions)
    if (a.param == param && a.sign == "positive") return true;
  return false;
}

PDEFamily build_gks(const FuncSpec& f, const FuncSpec& g, const FuncSpec& h, const FuncSpec& r) {
  const std::pair<const char*, const FuncSpec*> specs[] = {{"f", &f}, {"g", &g}, {"h", &h}, {"r", &r}};
  for (const auto& [name, spec] : specs) {
    if (spec->abstract) continue;
    bool bad = any_atom(spec->value, [](const AtomNode& n) {
      return n.kind == AtomKind::Indep || (n.kind == AtomKind::Jet && (n.var != U || n.jet.order() > 0));
    });
    if (bad) throw DomainError(std::string("coefficient function ") + name + " must depend on u only");
  }
  PDEFamily fam;
  fam.f = f;
  fam.g = g;
  fam.h = h;
  fam.r = r;
  fam.delta = fam.specialize(gks_delta_abstract());
  return fam;
}

NormalForm normal_form(const PDEFamily& fam) {
  Poly ut = u_jet("t");
  Poly coeff = partial(fam.delta, ut.terms()[0].mono.factors[0].atom);
  if (coeff != Poly(-1)) throw DomainError("equation is not evolutionary in u_t");
  NormalForm nf{fam.delta + ut};
  bool t_free = !any_atom(nf.rhs, [](const AtomNode& n) { return n.kind == AtomKind::Jet && n.jet.it > 0; });
  if (!t_free) throw DomainError("normal form still contains t-derivatives");
  return nf;
}

Reducer::Reducer(const NormalForm& nf) : nf_(nf) {}

const Poly& Reducer::t_jet(const JetIndex& j) {
  auto it = table_.find(j);
  if (it != table_.end()) return it->second;
  Poly value;
  if (j.ix > 0) {
    value = td_(t_jet(j.plus(X, -1)), X);
  } else if (j.iy > 0) {
    value = td_(t_jet(j.plus(Y, -1)), Y);
  } else if (j.it == 1) {
    value = nf_.rhs;
  } else {
    value = (*this)(td_(t_jet(j.plus(T, -1)), T));
  }
  return table_.emplace(j, std::move(value)).first->second;
}

Poly Reducer::operator()(const Poly& e) {
  return substitute_atoms(e, [this](const Atom& a) -> std::optional<Poly> {
    if (a->kind == AtomKind::Jet && a->var == U && a->jet.it > 0) return t_jet(a->jet);
    return std::nullopt;
  });
}

Poly reduce_on_solutions(const Poly& e, const NormalForm& nf) {
  Reducer r(nf);
  return r(e);
}

// ---------------------------------------------------------------------------

nlohmann::json family_to_json(const PDEFamily& fam) {
  nlohmann::json j;
  j["label"] = fam.label;
  const std::pair<const char*, const FuncSpec*> specs[] = {{"f", &fam.f}, {"g", &fam.g}, {"h", &fam.h}, {"r", &fam.r}};
  for (const auto& [name, spec] : specs) j[name] = spec->abstract ? std::string("abstract") : print_poly(spec->value);
  j["assumptions"] = nlohmann::json::array();
  for (const auto& a : fam.assumptions) j["assumptions"].push_back({{"param", a.param}, {"sign", a.sign}});
  j["side_conditions"] = fam.side_conditions;
  return j;
}

namespace {

FuncSpec spec_from_text(const std::string& s, const ParseContext& ctx) {
  std::string trimmed = s;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.erase(trimmed.begin());
  if (trimmed.empty() || trimmed == "abstract") return FuncSpec::symbol();
  return FuncSpec::of(parse_poly(trimmed, ctx));
}

}  // namespace

PDEFamily family_from_json(const nlohmann::json& j, const ParseContext& ctx) {
  auto get = [&](const char* k) { return j.contains(k) ? j.at(k).get<std::string>() : std::string("abstract"); };
  PDEFamily fam = build_gks(spec_from_text(get("f"), ctx), spec_from_text(get("g"), ctx),
                            spec_from_text(get("h"), ctx), spec_from_text(get("r"), ctx));
  if (j.contains("label")) fam.label = j.at("label");
  if (j.contains("assumptions"))
    for (const auto& a : j.at("assumptions")) fam.assumptions.push_back({a.at("param"), a.at("sign")});
  if (j.contains("side_conditions"))
    for (const auto& s : j.at("side_conditions")) fam.side_conditions.push_back(s);
  return fam;
}

PDEFamily parse_family_inline(const std::string& spec, const ParseContext& ctx) {
  if (spec == "generic" || spec.empty()) return build_gks({}, {}, {}, {});
  nlohmann::json j;
  std::vector<ParamAssumption> positives;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in family spec", {0, spec.size()});
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front()))) key.erase(key.begin());
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    if (key == "f" || key == "g" || key == "h" || key == "r") {
      j[key] = value;
    } else if (key == "positive") {
      std::stringstream ps(value);
      std::string p;
      while (std::getline(ps, p, ',')) positives.push_back({p, "positive"});
    } else {
      throw ParseError("unknown family key '" + key + "'", {0, spec.size()});
    }
  }
  PDEFamily fam = family_from_json(j, ctx);
  fam.label = spec;
  fam.assumptions = positives;
  return fam;
}

}  // namespace gksym

#include "gksym/expr.hpp"

#include <stdexcept>

namespace gksym {

struct Expr::Node {
  Kind kind = Kind::Num;
  Rational value;
  Atom atom;
  std::vector<Expr> children;
  Exponent exp;
  Call call = Call::Func;
  std::string name;
  std::vector<int> deriv;
  SourceSpan span;
};

Expr::Expr() : n_(std::make_shared<Node>()) {}

Expr Expr::number(const Rational& c, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->value = c;
  n->span = s;
  return Expr(n);
}

Expr Expr::leaf(const Atom& a, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->atom = a;
  n->span = s;
  return Expr(n);
}

Expr Expr::add(std::vector<Expr> children, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->children = std::move(children);
  n->span = s;
  return Expr(n);
}

Expr Expr::mul(std::vector<Expr> children, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->children = std::move(children);
  n->span = s;
  return Expr(n);
}

Expr Expr::power(const Expr& base, Exponent e, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->children = {base};
  n->exp = e;
  n->span = s;
  return Expr(n);
}

Expr Expr::call(Call c, std::vector<Expr> args, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->call = c;
  n->children = std::move(args);
  n->span = s;
  return Expr(n);
}

Expr Expr::function(const std::string& name, std::vector<int> deriv, std::vector<Expr> args, SourceSpan s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->call = Call::Func;
  n->name = name;
  n->deriv = std::move(deriv);
  n->children = std::move(args);
  n->span = s;
  return Expr(n);
}

Expr::Kind Expr::kind() const { return n_->kind; }
const Rational& Expr::value() const { return n_->value; }
const Atom& Expr::atom() const { return n_->atom; }
const std::vector<Expr>& Expr::children() const { return n_->children; }
Exponent Expr::exponent() const { return n_->exp; }
Expr::Call Expr::call_kind() const { return n_->call; }
const std::string& Expr::name() const { return n_->name; }
const std::vector<int>& Expr::deriv() const { return n_->deriv; }
SourceSpan Expr::span() const { return n_->span; }
Expr Expr::with_span(SourceSpan s) const {
  auto n = std::make_shared<Node>(*n_);
  n->span = s;
  return Expr(n);
}

Poly to_poly(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Num:
      return Poly(e.value());
    case Expr::Kind::Leaf:
      return Poly::from_atom(e.atom());
    case Expr::Kind::Add: {
      std::vector<Poly> parts;
      for (const auto& c : e.children()) parts.push_back(to_poly(c));
      return sum(parts);
    }
    case Expr::Kind::Mul: {
      Poly r(1);
      for (const auto& c : e.children()) {
        r = r * to_poly(c);
        if (r.is_zero()) break;
      }
      return r;
    }
    case Expr::Kind::Pow:
      return pow(to_poly(e.children()[0]), e.exponent());
    case Expr::Kind::Call: {
      std::vector<Poly> args;
      for (const auto& c : e.children()) args.push_back(to_poly(c));
      switch (e.call_kind()) {
        case Expr::Call::Exp: return exp_of(args.at(0));
        case Expr::Call::Sin: return sin_of(args.at(0));
        case Expr::Call::Cos: return cos_of(args.at(0));
        case Expr::Call::Func: return func(e.name(), e.deriv(), std::move(args));
      }
    }
  }
  return Poly();
}

namespace {

Expr atom_expr(const Atom& a) {
  switch (a->kind) {
    case AtomKind::NumBase:
      return Expr::number(Rational(static_cast<long>(a->prime)));
    case AtomKind::Func: {
      std::vector<Expr> args;
      for (const auto& p : a->args) args.push_back(from_poly(p));
      return Expr::function(a->name, a->deriv, std::move(args));
    }
    case AtomKind::Exp:
      return Expr::call(Expr::Call::Exp, {from_poly(a->args[0])});
    case AtomKind::Sin:
      return Expr::call(Expr::Call::Sin, {from_poly(a->args[0])});
    case AtomKind::Cos:
      return Expr::call(Expr::Call::Cos, {from_poly(a->args[0])});
    case AtomKind::PowBase:
      return from_poly(a->args[0]);
    default:
      return Expr::leaf(a);
  }
}

Expr term_expr(const Term& t) {
  std::vector<Expr> factors;
  if (t.coef != 1 || t.mono.empty()) factors.push_back(Expr::number(t.coef));
  for (const auto& f : t.mono.factors) {
    Expr base = atom_expr(f.atom);
    factors.push_back(f.exp == Exponent(1) ? base : Expr::power(base, f.exp));
  }
  if (factors.size() == 1) return factors[0];
  return Expr::mul(std::move(factors));
}

}  // namespace

Expr from_poly(const Poly& p) {
  if (p.is_zero()) return Expr::number(0);
  if (p.size() == 1) return term_expr(p.terms()[0]);
  std::vector<Expr> terms;
  for (const auto& t : p.terms()) terms.push_back(term_expr(t));
  return Expr::add(std::move(terms));
}

Expr normalize(const Expr& e) { return from_poly(to_poly(e)); }

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string rational_str(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

nlohmann::json atom_json(const Atom& a) {
  nlohmann::json j;
  switch (a->kind) {
    case AtomKind::Param:
      j["kind"] = "param";
      j["name"] = a->name;
      break;
    case AtomKind::Indep:
      j["kind"] = "var";
      j["name"] = dir_name(a->var);
      break;
    case AtomKind::Basis:
      j["kind"] = "basis";
      j["name"] = a->var == 3 ? "u" : dir_name(a->var);
      break;
    case AtomKind::Jet:
      j["kind"] = "jet";
      j["var"] = a->var == U ? "u" : "v";
      j["index"] = {a->jet.ix, a->jet.iy, a->jet.it};
      break;
    default:
      throw DomainError("atom kind has no leaf JSON form");
  }
  return j;
}

Atom atom_from_json(const nlohmann::json& j) {
  std::string k = j.at("kind");
  auto dir_of = [](const std::string& n) -> int {
    if (n == "x") return X;
    if (n == "y") return Y;
    if (n == "t") return T;
    if (n == "u") return 3;
    throw DomainError("bad variable name " + n);
  };
  if (k == "param") return param_atom(j.at("name"));
  if (k == "var") return indep_atom(dir_of(j.at("name")));
  if (k == "basis") return basis_atom(dir_of(j.at("name")));
  if (k == "jet") {
    auto idx = j.at("index");
    return jet_atom(j.at("var") == "u" ? U : V, JetIndex{idx.at(0), idx.at(1), idx.at(2)});
  }
  throw DomainError("unknown JSON atom kind " + k);
}

}  // namespace

nlohmann::json to_json(const Expr& e) {
  nlohmann::json j;
  switch (e.kind()) {
    case Expr::Kind::Num:
      j["kind"] = "num";
      j["value"] = rational_str(e.value());
      break;
    case Expr::Kind::Leaf:
      j = atom_json(e.atom());
      break;
    case Expr::Kind::Add:
    case Expr::Kind::Mul: {
      j["kind"] = e.kind() == Expr::Kind::Add ? "add" : "mul";
      j["children"] = nlohmann::json::array();
      for (const auto& c : e.children()) j["children"].push_back(to_json(c));
      break;
    }
    case Expr::Kind::Pow:
      j["kind"] = "pow";
      j["base"] = to_json(e.children()[0]);
      j["exp"] = e.exponent().str();
      break;
    case Expr::Kind::Call: {
      static const char* names[] = {"func", "exp", "sin", "cos"};
      j["kind"] = names[static_cast<int>(e.call_kind())];
      if (e.call_kind() == Expr::Call::Func) {
        j["name"] = e.name();
        j["deriv"] = e.deriv();
      }
      j["args"] = nlohmann::json::array();
      for (const auto& c : e.children()) j["args"].push_back(to_json(c));
      break;
    }
  }
  return j;
}

Expr expr_from_json(const nlohmann::json& j) {
  std::string k = j.at("kind");
  if (k == "num") return Expr::number(parse_rational(j.at("value")));
  if (k == "add" || k == "mul") {
    std::vector<Expr> ch;
    for (const auto& c : j.at("children")) ch.push_back(expr_from_json(c));
    return k == "add" ? Expr::add(std::move(ch)) : Expr::mul(std::move(ch));
  }
  if (k == "pow") {
    Rational q = parse_rational(j.at("exp"));
    return Expr::power(expr_from_json(j.at("base")),
                       Exponent(q.get_num().get_si(), q.get_den().get_si()));
  }
  if (k == "func" || k == "exp" || k == "sin" || k == "cos") {
    std::vector<Expr> args;
    for (const auto& c : j.at("args")) args.push_back(expr_from_json(c));
    if (k == "func") return Expr::function(j.at("name"), j.at("deriv").get<std::vector<int>>(), std::move(args));
    Expr::Call c = k == "exp" ? Expr::Call::Exp : (k == "sin" ? Expr::Call::Sin : Expr::Call::Cos);
    return Expr::call(c, std::move(args));
  }
  return Expr::leaf(atom_from_json(j));
}

}  // namespace gksym

#include "gksym/dsl.hpp"

#include <cctype>
#include <sstream>

#include "gksym/calculus.hpp"

namespace gksym {

ParseContext ParseContext::standard() {
  ParseContext c;
  c.params = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "c", "c1", "c2", "c3", "c4", "kappa"};
  for (const char* n : {"f", "g", "h", "r"}) c.functions[n] = {"u"};
  c.functions["phi"] = {"x", "y", "t", "u"};
  for (const char* n : {"xi1", "xi2", "xi3", "eta"}) c.functions[n] = {"x", "y", "t", "u"};
  c.functions["F"] = {"y", "t"};
  c.functions["F0"] = {"x", "y", "t"};
  for (const char* n : {"F1", "F11", "F12", "F13"}) c.functions[n] = {"t"};
  c.functions["F15"] = {"y", "t"};
  return c;
}

namespace {

enum class Tok { Num, Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int primes = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Token t;
    t.span.start = pos_;
    if (pos_ >= s_.size()) {
      t.kind = Tok::End;
      t.span.end = pos_;
      return t;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      t.kind = Tok::Num;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      t.kind = Tok::Ident;
      t.text = s_.substr(t.span.start, pos_ - t.span.start);
      while (pos_ < s_.size() && s_[pos_] == '\'') {
        ++t.primes;
        ++pos_;
      }
      t.span.end = pos_;
      return t;
    } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
      ++pos_;
      t.kind = Tok::Punct;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", {pos_, pos_ + 1});
    }
    t.span.end = pos_;
    t.text = s_.substr(t.span.start, pos_ - t.span.start);
    return t;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

bool plain_var_name(const Expr& e, std::string* name) {
  if (e.kind() != Expr::Kind::Leaf) return false;
  const AtomNode& a = *e.atom();
  if (a.kind == AtomKind::Indep) {
    *name = dir_name(a.var);
    return true;
  }
  if (a.kind == AtomKind::Jet && a.var == U && a.jet.order() == 0) {
    *name = "u";
    return true;
  }
  return false;
}

class Parser {
 public:
  Parser(const std::string& src, const ParseContext& ctx, int depth) : src_(src), ctx_(ctx), lex_(src), depth_(depth) {
    advance();
  }

  Expr parse_all() {
    Expr e = parse_sum();
    if (cur_.kind != Tok::End) throw ParseError("unexpected '" + cur_.text + "'", cur_.span);
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }
  bool is_punct(char c) const { return cur_.kind == Tok::Punct && cur_.text[0] == c; }
  void expect(char c) {
    if (!is_punct(c))
      throw ParseError(std::string("expected '") + c + "'", cur_.kind == Tok::End ? SourceSpan{cur_.span.start, cur_.span.start} : cur_.span);
    advance();
  }
  static SourceSpan join(SourceSpan a, SourceSpan b) { return {a.start, b.end}; }

  Expr parse_sum() {
    std::size_t start = cur_.span.start;
    std::vector<Expr> terms;
    terms.push_back(parse_product());
    while (is_punct('+') || is_punct('-')) {
      bool minus = is_punct('-');
      advance();
      Expr t = parse_product();
      if (minus) t = Expr::mul({Expr::number(-1), t}, t.span());
      terms.push_back(t);
    }
    if (terms.size() == 1) return terms[0];
    SourceSpan s{start, terms.back().span().end};
    return Expr::add(std::move(terms), s);
  }

  Expr parse_product() {
    std::size_t start = cur_.span.start;
    std::vector<Expr> factors;
    factors.push_back(parse_unary());
    while (is_punct('*') || is_punct('/')) {
      bool div = is_punct('/');
      advance();
      Expr f = parse_unary();
      if (div) f = Expr::power(f, Exponent(-1), f.span());
      factors.push_back(f);
    }
    if (factors.size() == 1) return factors[0];
    SourceSpan s{start, factors.back().span().end};
    return Expr::mul(std::move(factors), s);
  }

  Expr parse_unary() {
    if (is_punct('-')) {
      SourceSpan s = cur_.span;
      advance();
      Expr e = parse_unary();
      return Expr::mul({Expr::number(-1), e}, join(s, e.span()));
    }
    if (is_punct('+')) {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!is_punct('^')) return base;
    advance();
    Expr ex = parse_unary();
    Poly q = to_poly(ex);
    if (!q.is_constant()) throw ParseError("exponent must be a rational constant", ex.span());
    Rational r = q.constant_value();
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
      throw ParseError("exponent too large", ex.span());
    return Expr::power(base, Exponent(r.get_num().get_si(), r.get_den().get_si()), join(base.span(), ex.span()));
  }

  std::vector<Expr> parse_args() {
    expect('(');
    std::vector<Expr> args;
    if (is_punct(')')) {
      advance();
      return args;
    }
    args.push_back(parse_sum());
    while (is_punct(',')) {
      advance();
      args.push_back(parse_sum());
    }
    expect(')');
    return args;
  }

  Expr parse_primary() {
    if (cur_.kind == Tok::Num) {
      Token t = cur_;
      advance();
      return Expr::number(Rational(mpz_class(t.text)), t.span);
    }
    if (is_punct('(')) {
      SourceSpan s = cur_.span;
      advance();
      Expr e = parse_sum();
      SourceSpan close = cur_.span;
      expect(')');
      return e.with_span(join(s, close));
    }
    if (cur_.kind == Tok::Ident) return parse_ident();
    if (cur_.kind == Tok::End) throw ParseError("unexpected end of input", {cur_.span.start, cur_.span.start});
    throw ParseError("unexpected '" + cur_.text + "'", cur_.span);
  }

  Expr variable_expr(const std::string& n, SourceSpan s) {
    if (n == "x") return Expr::leaf(indep_atom(X), s);
    if (n == "y") return Expr::leaf(indep_atom(Y), s);
    if (n == "t") return Expr::leaf(indep_atom(T), s);
    if (n == "u") return Expr::leaf(jet_atom(U, {}), s);
    throw ParseError("unknown variable " + n, s);
  }

  Expr parse_ident() {
    Token t = cur_;
    advance();
    std::string base = t.text, suffix;
    bool has_suffix = false;
    if (auto p = t.text.find('_'); p != std::string::npos) {
      base = t.text.substr(0, p);
      suffix = t.text.substr(p + 1);
      has_suffix = true;
      if (suffix.empty()) throw ParseError("empty subscript", t.span);
    }
    auto no_primes = [&] {
      if (t.primes) throw ParseError("primes are only allowed on function symbols", t.span);
    };

    if (base == "u" || base == "v") {
      no_primes();
      JetIndex j;
      for (char ch : suffix) {
        if (ch == 'x') ++j.ix;
        else if (ch == 'y') ++j.iy;
        else if (ch == 't') ++j.it;
        else throw ParseError("jet suffix letters must be x, y or t", t.span);
      }
      return Expr::leaf(jet_atom(base == "u" ? U : V, j), t.span);
    }
    if (base == "d" && has_suffix) {
      no_primes();
      if (suffix == "x") return Expr::leaf(basis_atom(X), t.span);
      if (suffix == "y") return Expr::leaf(basis_atom(Y), t.span);
      if (suffix == "t") return Expr::leaf(basis_atom(T), t.span);
      if (suffix == "u") return Expr::leaf(basis_atom(3), t.span);
      throw ParseError("basis marker must be d_x, d_y, d_t or d_u", t.span);
    }
    if (base == "x" || base == "y" || base == "t") {
      no_primes();
      if (has_suffix) throw ParseError("jet suffix on non-u symbol " + base, t.span);
      return variable_expr(base, t.span);
    }
    if (!has_suffix && ctx_.macros.count(base)) {
      no_primes();
      if (depth_ > 16) throw ParseError("macro expansion too deep", t.span);
      Parser sub(ctx_.macros.at(base), ctx_, depth_ + 1);
      try {
        return sub.parse_all().with_span(t.span);
      } catch (const ParseError& e) {
        throw ParseError("in macro " + base + ": " + e.what(), t.span);
      }
    }
    if (!has_suffix && ctx_.params.count(base)) {
      no_primes();
      return Expr::leaf(param_atom(base), t.span);
    }
    if (!has_suffix && (base == "exp" || base == "sin" || base == "cos" || base == "sqrt")) {
      no_primes();
      auto args = parse_args();
      if (args.size() != 1) throw ParseError(base + " takes one argument", t.span);
      SourceSpan s{t.span.start, args[0].span().end + 1};
      if (base == "sqrt") return Expr::power(args[0], Exponent(1, 2), s);
      Expr::Call c = base == "exp" ? Expr::Call::Exp : (base == "sin" ? Expr::Call::Sin : Expr::Call::Cos);
      return Expr::call(c, std::move(args), s);
    }
    if (!has_suffix && base == "diff") return parse_diff(t);
    if (!has_suffix && base == "Int") return parse_int(t);
    if (!has_suffix && base == "deriv") return parse_deriv(t);
    if (ctx_.functions.count(base)) return parse_function(t, base, suffix);
    if (has_suffix && ctx_.params.count(base)) throw ParseError("jet suffix on non-u symbol " + base, t.span);
    throw ParseError("unknown identifier " + t.text, t.span);
  }

  Atom variable_atom(const Expr& e) {
    std::string n;
    if (plain_var_name(e, &n)) return e.atom();
    if (e.kind() == Expr::Kind::Leaf && e.atom()->kind == AtomKind::Param) return e.atom();
    throw ParseError("expected a variable", e.span());
  }

  Expr parse_diff(const Token& t) {
    auto args = parse_args();
    if (args.size() < 2 || args.size() > 3) throw ParseError("diff(expr, var[, n])", t.span);
    Atom var = variable_atom(args[1]);
    long n = 1;
    if (args.size() == 3) {
      Poly q = to_poly(args[2]);
      if (!q.is_constant() || q.constant_value().get_den() != 1 || q.constant_value() < 0)
        throw ParseError("derivative order must be a nonnegative integer", args[2].span());
      n = q.constant_value().get_num().get_si();
    }
    Poly p = to_poly(args[0]);
    for (long k = 0; k < n; ++k) p = partial(p, var);
    return from_poly(p).with_span({t.span.start, args.back().span().end + 1});
  }

  Expr parse_int(const Token& t) {
    auto args = parse_args();
    if (args.size() != 2) throw ParseError("Int(expr, var)", t.span);
    Atom var = variable_atom(args[1]);
    try {
      return from_poly(integrate(to_poly(args[0]), var)).with_span({t.span.start, args[1].span().end + 1});
    } catch (const DomainError& e) {
      throw ParseError(e.what(), args[0].span());
    }
  }

  Expr parse_deriv(const Token& t) {
    auto args = parse_args();
    if (args.empty()) throw ParseError("deriv(F(args), n1, ...)", t.span);
    const Expr& f = args[0];
    if (f.kind() != Expr::Kind::Call || f.call_kind() != Expr::Call::Func)
      throw ParseError("deriv expects a function application", f.span());
    if (args.size() != f.children().size() + 1) throw ParseError("deriv needs one order per argument", t.span);
    std::vector<int> d = f.deriv();
    for (std::size_t k = 1; k < args.size(); ++k) {
      Poly q = to_poly(args[k]);
      if (!q.is_constant() || q.constant_value().get_den() != 1 || q.constant_value() < 0)
        throw ParseError("derivative order must be a nonnegative integer", args[k].span());
      if (d[k - 1] < 0) throw ParseError("cannot differentiate an antiderivative slot here", args[k].span());
      d[k - 1] += static_cast<int>(q.constant_value().get_num().get_si());
    }
    return Expr::function(f.name(), d, f.children(), {t.span.start, args.back().span().end + 1});
  }

  Expr parse_function(const Token& t, const std::string& name, const std::string& suffix) {
    std::vector<Expr> args;
    SourceSpan s = t.span;
    const auto& formal = ctx_.functions.at(name);
    if (is_punct('(')) {
      args = parse_args();
      if (args.empty()) throw ParseError("function " + name + " needs arguments", t.span);
      s.end = args.back().span().end + 1;
    } else {
      for (const auto& f : formal) args.push_back(variable_expr(f, t.span));
    }
    std::vector<int> deriv(args.size(), 0);
    if (t.primes) {
      if (!suffix.empty()) throw ParseError("use either primes or a subscript", t.span);
      if (args.size() != 1) throw ParseError("primes need a one-argument function", t.span);
      deriv[0] = t.primes;
    }
    for (char ch : suffix) {
      std::string letter(1, ch);
      std::size_t slot = args.size();
      for (std::size_t k = 0; k < args.size(); ++k) {
        std::string n;
        if (plain_var_name(args[k], &n) && n == letter) {
          slot = k;
          break;
        }
      }
      if (slot == args.size()) throw ParseError("no argument named '" + letter + "' for " + name, t.span);
      ++deriv[slot];
    }
    return Expr::function(name, deriv, std::move(args), s);
  }

  const std::string& src_;
  const ParseContext& ctx_;
  Lexer lex_;
  Token cur_;
  int depth_;
};

// ---------------------------------------------------------------------------
// printer

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecPower = 3;

std::string rational_text(const Rational& r) { return r.get_str(); }

bool negative_expr(const Expr& e) {
  if (e.kind() == Expr::Kind::Num) return sgn(e.value()) < 0;
  if (e.kind() == Expr::Kind::Mul && !e.children().empty() && e.children()[0].kind() == Expr::Kind::Num)
    return sgn(e.children()[0].value()) < 0;
  return false;
}

Expr negated(const Expr& e) {
  if (e.kind() == Expr::Kind::Num) return Expr::number(-e.value());
  std::vector<Expr> ch = e.children();
  Rational c = -ch[0].value();
  if (c == 1) ch.erase(ch.begin());
  else ch[0] = Expr::number(c);
  if (ch.size() == 1) return ch[0];
  return Expr::mul(std::move(ch));
}

std::string pr(const Expr& e, int prec);

std::string function_text(const Expr& e) {
  const auto& args = e.children();
  const auto& d = e.deriv();
  std::ostringstream os;
  if (args.size() == 1 && d[0] < 0) {
    std::string v;
    if (!plain_var_name(args[0], &v)) throw DomainError("antiderivative needs a plain variable argument");
    Expr inner = Expr::function(e.name(), {d[0] + 1}, args);
    os << "Int(" << pr(inner, 0) << "," << v << ")";
    return os.str();
  }
  auto arglist = [&] {
    std::string s = "(";
    for (std::size_t k = 0; k < args.size(); ++k) s += (k ? "," : "") + pr(args[k], 0);
    return s + ")";
  };
  if (args.size() == 1) {
    os << e.name() << std::string(static_cast<std::size_t>(d[0]), '\'') << arglist();
    return os.str();
  }
  std::vector<std::string> names;
  bool plain = true;
  for (const auto& a : args) {
    std::string n;
    if (!plain_var_name(a, &n)) plain = false;
    for (const auto& m : names) plain = plain && m != n;
    names.push_back(n);
  }
  bool any = false;
  for (int k : d) any = any || k != 0;
  if (plain) {
    os << e.name();
    if (any) {
      os << "_";
      for (std::size_t k = 0; k < d.size(); ++k)
        for (int i = 0; i < d[k]; ++i) os << names[k];
    }
    os << arglist();
    return os.str();
  }
  if (!any) return e.name() + arglist();
  os << "deriv(" << e.name() << arglist();
  for (int k : d) os << "," << k;
  os << ")";
  return os.str();
}

std::string leaf_text(const AtomNode& a) {
  switch (a.kind) {
    case AtomKind::Indep: return dir_name(a.var);
    case AtomKind::Param: return a.name;
    case AtomKind::Basis: return std::string("d_") + (a.var == 3 ? "u" : dir_name(a.var));
    case AtomKind::Jet: {
      std::string s = a.var == U ? "u" : "v";
      if (a.jet.order()) s += "_" + a.jet.suffix();
      return s;
    }
    default: return atom_debug_name(a);
  }
}

std::string pow_text(const Expr& base, Exponent e, int prec) {
  if (e == Exponent(1, 2)) return "sqrt(" + pr(base, 0) + ")";
  if (e.num < 0) {
    std::string s = "1/" + pow_text(base, -e, kPrecPower + 1);
    return prec > kPrecProduct ? "(" + s + ")" : s;
  }
  std::string b = pr(base, kPrecPower + 1);
  if (e.is_integer()) return b + "^" + e.str();
  return b + "^(" + e.str() + ")";
}

std::string product_text(const Expr& e, int prec) {
  const auto& ch = e.children();
  Rational coef = 1;
  std::size_t i = 0;
  if (!ch.empty() && ch[0].kind() == Expr::Kind::Num) {
    coef = ch[0].value();
    i = 1;
  }
  bool neg = sgn(coef) < 0;
  if (neg) coef = -coef;
  std::vector<std::string> num, den;
  if (coef != 1) num.push_back(rational_text(coef));
  for (; i < ch.size(); ++i) {
    const Expr& f = ch[i];
    if (f.kind() == Expr::Kind::Pow && f.exponent().num < 0) {
      Exponent pe = -f.exponent();
      den.push_back(pe == Exponent(1) ? pr(f.children()[0], kPrecPower) : pow_text(f.children()[0], pe, kPrecPower));
    } else {
      num.push_back(pr(f, kPrecProduct + 1));
    }
  }
  std::string s;
  if (num.empty()) s = "1";
  for (std::size_t k = 0; k < num.size(); ++k) s += (k ? "*" : "") + num[k];
  if (!den.empty()) {
    std::string d;
    for (std::size_t k = 0; k < den.size(); ++k) d += (k ? "*" : "") + den[k];
    s += den.size() > 1 ? "/(" + d + ")" : "/" + d;
  }
  if (neg) s = "-" + s;
  if (prec > kPrecProduct || (neg && prec > kPrecSum)) return "(" + s + ")";
  return s;
}

std::string pr(const Expr& e, int prec) {
  switch (e.kind()) {
    case Expr::Kind::Num: {
      std::string s = rational_text(e.value());
      bool compound = sgn(e.value()) < 0 || e.value().get_den() != 1;
      if (compound && prec > kPrecSum) return "(" + s + ")";
      return s;
    }
    case Expr::Kind::Leaf:
      return leaf_text(*e.atom());
    case Expr::Kind::Add: {
      std::string s;
      for (std::size_t k = 0; k < e.children().size(); ++k) {
        const Expr& c = e.children()[k];
        if (k == 0) s = pr(c, kPrecSum);
        else if (negative_expr(c)) s += " - " + pr(negated(c), kPrecSum + 1);
        else s += " + " + pr(c, kPrecSum + 1);
      }
      if (prec > kPrecSum) return "(" + s + ")";
      return s;
    }
    case Expr::Kind::Mul:
      return product_text(e, prec);
    case Expr::Kind::Pow:
      return pow_text(e.children()[0], e.exponent(), prec);
    case Expr::Kind::Call: {
      if (e.call_kind() == Expr::Call::Func) return function_text(e);
      static const char* names[] = {"", "exp", "sin", "cos"};
      return std::string(names[static_cast<int>(e.call_kind())]) + "(" + pr(e.children()[0], 0) + ")";
    }
  }
  return "?";
}

}  // namespace

Expr parse_expr(const std::string& src, const ParseContext& ctx) {
  Parser p(src, ctx, 0);
  return p.parse_all();
}

Poly parse_poly(const std::string& src, const ParseContext& ctx) {
  Expr e = parse_expr(src, ctx);
  try {
    return to_poly(e);
  } catch (const DomainError& err) {
    throw ParseError(err.what(), e.span());
  }
}

std::string print_expr(const Expr& e) { return pr(e, 0); }
std::string print_poly(const Poly& p) { return print_expr(from_poly(p)); }
std::string print_monomial(const Monomial& m) {
  if (m.empty()) return "1";
  return print_poly(Poly::from_canonical({Term{m, Rational(1)}}));
}

std::string format_parse_error(const std::string& src, const ParseError& err) {
  std::ostringstream os;
  SourceSpan s = err.span();
  os << "parse error: " << err.what() << "\n  " << src << "\n  " << std::string(s.start, ' ')
     << std::string(std::max<std::size_t>(1, s.end - s.start), '^');
  return os.str();
}

}  // namespace gksym

#include "gksym/poly.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace gksym {

// ---------------------------------------------------------------------------
// Exponent

Exponent::Exponent(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("zero exponent denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

std::int64_t Exponent::floor() const {
  if (num >= 0) return num / den;
  return -((-num + den - 1) / den);
}

Rational Exponent::to_rational() const {
  Rational r(static_cast<long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

std::string Exponent::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Exponent operator+(Exponent a, Exponent b) { return Exponent(a.num * b.den + b.num * a.den, a.den * b.den); }
Exponent operator-(Exponent a, Exponent b) { return Exponent(a.num * b.den - b.num * a.den, a.den * b.den); }
Exponent operator*(Exponent a, Exponent b) { return Exponent(a.num * b.num, a.den * b.den); }
std::strong_ordering operator<=>(Exponent a, Exponent b) { return a.num * b.den <=> b.num * a.den; }

const char* dir_name(int d) {
  static const char* names[] = {"x", "y", "t"};
  return names[d];
}

JetIndex JetIndex::plus(int d, int k) const {
  JetIndex r = *this;
  if (d == X) r.ix += k;
  else if (d == Y) r.iy += k;
  else r.it += k;
  return r;
}

std::string JetIndex::suffix() const {
  return std::string(static_cast<std::size_t>(ix), 'x') + std::string(static_cast<std::size_t>(iy), 'y') +
         std::string(static_cast<std::size_t>(it), 't');
}

std::vector<JetIndex> jet_indices_up_to(int max_order) {
  std::vector<JetIndex> out;
  for (int n = 1; n <= max_order; ++n)
    for (int a = n; a >= 0; --a)
      for (int b = n - a; b >= 0; --b) out.push_back({a, b, n - a - b});
  return out;
}

// ---------------------------------------------------------------------------
// ordering

namespace {

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int cmp_rational(const Rational& a, const Rational& b) {
  int c = ::cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

int compare_atoms(const AtomNode& a, const AtomNode& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return cmp3(static_cast<int>(a.kind), static_cast<int>(b.kind));
  switch (a.kind) {
    case AtomKind::NumBase:
      return cmp3(a.prime, b.prime);
    case AtomKind::Param: {
      int c = a.name.compare(b.name);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case AtomKind::Indep:
    case AtomKind::Basis:
      return cmp3(a.var, b.var);
    case AtomKind::Jet:
      if (a.var != b.var) return cmp3(a.var, b.var);
      if (a.jet.order() != b.jet.order()) return cmp3(a.jet.order(), b.jet.order());
      if (a.jet.ix != b.jet.ix) return cmp3(b.jet.ix, a.jet.ix);
      if (a.jet.iy != b.jet.iy) return cmp3(b.jet.iy, a.jet.iy);
      return cmp3(b.jet.it, a.jet.it);
    case AtomKind::Func: {
      int c = a.name.compare(b.name);
      if (c != 0) return c < 0 ? -1 : 1;
      if (a.args.size() != b.args.size()) return cmp3(a.args.size(), b.args.size());
      int oa = 0, ob = 0;
      for (int d : a.deriv) oa += d;
      for (int d : b.deriv) ob += d;
      if (oa != ob) return cmp3(oa, ob);
      for (std::size_t i = 0; i < a.deriv.size(); ++i)
        if (a.deriv[i] != b.deriv[i]) return cmp3(b.deriv[i], a.deriv[i]);
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        int ca = compare_polys(a.args[i], b.args[i]);
        if (ca != 0) return ca;
      }
      return 0;
    }
    case AtomKind::Exp:
    case AtomKind::Sin:
    case AtomKind::Cos:
    case AtomKind::PowBase:
      return compare_polys(a.args[0], b.args[0]);
  }
  return 0;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_atoms(a.factors[i].atom, b.factors[i].atom);
    if (c != 0) return c;
    auto e = a.factors[i].exp <=> b.factors[i].exp;
    if (e != 0) return e < 0 ? -1 : 1;
  }
  return cmp3(a.factors.size(), b.factors.size());
}

int compare_polys(const Poly& a, const Poly& b) {
  if (a.shares_storage(b)) return 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_monomials(ta[i].mono, tb[i].mono);
    if (c != 0) return c;
    c = cmp_rational(ta[i].coef, tb[i].coef);
    if (c != 0) return c;
  }
  return cmp3(ta.size(), tb.size());
}

// ---------------------------------------------------------------------------
// monomials

Monomial multiply(const Monomial& a, const Monomial& b) {
  if (a.factors.empty()) return b;
  if (b.factors.empty()) return a;
  Monomial r;
  r.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int c = compare_atoms(a.factors[i].atom, b.factors[j].atom);
    if (c < 0) {
      r.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      r.factors.push_back(b.factors[j++]);
    } else {
      Exponent e = a.factors[i].exp + b.factors[j].exp;
      if (!e.is_zero()) r.factors.push_back({a.factors[i].atom, e});
      ++i;
      ++j;
    }
  }
  for (; i < a.factors.size(); ++i) r.factors.push_back(a.factors[i]);
  for (; j < b.factors.size(); ++j) r.factors.push_back(b.factors[j]);
  return r;
}

Monomial power(const Monomial& a, Exponent e) {
  Monomial r;
  if (e.is_zero()) return r;
  r.factors.reserve(a.factors.size());
  for (const auto& f : a.factors) r.factors.push_back({f.atom, f.exp * e});
  return r;
}

Monomial bump(const Monomial& m, const Atom& atom, Exponent delta) {
  if (delta.is_zero()) return m;
  Monomial one;
  one.factors.push_back({atom, delta});
  return multiply(m, one);
}

Exponent degree_of(const Monomial& m, const Atom& atom) {
  for (const auto& f : m.factors)
    if (compare_atoms(f.atom, atom) == 0) return f.exp;
  return Exponent(0);
}

// ---------------------------------------------------------------------------
// atoms

namespace {

constexpr int kJetTable = 17;

std::shared_ptr<AtomNode> make_node(AtomKind k) {
  auto n = std::make_shared<AtomNode>();
  n->kind = k;
  return n;
}

const std::vector<Atom>& jet_table() {
  static const std::vector<Atom> table = [] {
    std::vector<Atom> t(2 * kJetTable * kJetTable * kJetTable);
    for (int v = 0; v < 2; ++v)
      for (int a = 0; a < kJetTable; ++a)
        for (int b = 0; b < kJetTable; ++b)
          for (int c = 0; c < kJetTable; ++c) {
            auto n = make_node(AtomKind::Jet);
            n->var = v;
            n->jet = {a, b, c};
            t[((v * kJetTable + a) * kJetTable + b) * kJetTable + c] = n;
          }
    return t;
  }();
  return table;
}

Atom numbase_atom(std::int64_t p) {
  auto n = make_node(AtomKind::NumBase);
  n->prime = p;
  return n;
}

Atom kernel_atom(AtomKind k, const Poly& arg) {
  auto n = make_node(k);
  n->args.push_back(arg);
  return n;
}

Rational rational_int_pow(const Rational& c, std::int64_t k) {
  if (k == 0) return Rational(1);
  if (sgn(c) == 0) {
    if (k < 0) throw DomainError("division by zero");
    return Rational(0);
  }
  mpz_class n = c.get_num(), d = c.get_den();
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), n.get_mpz_t(), e);
  mpz_pow_ui(pd.get_mpz_t(), d.get_mpz_t(), e);
  Rational r = k > 0 ? Rational(pn, pd) : Rational(pd, pn);
  r.canonicalize();
  return r;
}

// Prime factorization of a positive integer by trial division.
std::vector<std::pair<std::int64_t, int>> factorize(const mpz_class& n0) {
  std::vector<std::pair<std::int64_t, int>> out;
  if (!n0.fits_slong_p()) throw DomainError("constant too large under a radical");
  std::int64_t n = n0.get_si();
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.push_back({p, k});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// c^e for rational c and arbitrary rational exponent e.
Poly rational_power(const Rational& c0, Exponent e) {
  if (e.is_integer()) return Poly(rational_int_pow(c0, e.num));
  if (sgn(c0) == 0) {
    if (e.num < 0) throw DomainError("division by zero");
    return Poly();
  }
  Rational c = c0;
  Rational sign = 1;
  if (sgn(c) < 0) {
    if (e.den % 2 == 0) throw DomainError("even root of a negative constant");
    if (e.num % 2 != 0) sign = -1;
    c = -c;
  }
  Term t;
  t.coef = sign;
  for (auto [p, k] : factorize(c.get_num())) t.mono.factors.push_back({numbase_atom(p), Exponent(k) * e});
  for (auto [p, k] : factorize(c.get_den())) t.mono.factors.push_back({numbase_atom(p), -(Exponent(k) * e)});
  std::sort(t.mono.factors.begin(), t.mono.factors.end(),
            [](const Factor& a, const Factor& b) { return compare_atoms(a.atom, b.atom) < 0; });
  std::vector<Term> v;
  v.push_back(std::move(t));
  return Poly::from_terms(std::move(v));
}

bool needs_special(const Monomial& m) {
  int exps = 0;
  for (const auto& f : m.factors) {
    switch (f.atom->kind) {
      case AtomKind::NumBase:
        if (f.exp.num < 0 || f.exp.num >= f.exp.den) return true;
        break;
      case AtomKind::Exp:
        if (++exps > 1 || !(f.exp == Exponent(1))) return true;
        break;
      case AtomKind::PowBase:
        if (f.exp.is_integer() && f.exp.num > 0) return true;
        break;
      default:
        break;
    }
  }
  return false;
}

void insert_sorted(Monomial& m, Factor f) {
  auto it = std::lower_bound(m.factors.begin(), m.factors.end(), f,
                             [](const Factor& a, const Factor& b) { return compare_atoms(a.atom, b.atom) < 0; });
  if (it != m.factors.end() && compare_atoms(it->atom, f.atom) == 0) {
    it->exp = it->exp + f.exp;
    if (it->exp.is_zero()) m.factors.erase(it);
  } else {
    m.factors.insert(it, std::move(f));
  }
}

void canon_special(Term&& t, std::vector<Term>& out) {
  Monomial rest;
  Rational c = t.coef;
  std::vector<Poly> exp_args;
  std::vector<std::pair<Poly, std::int64_t>> expand;
  for (auto& f : t.mono.factors) {
    switch (f.atom->kind) {
      case AtomKind::NumBase: {
        std::int64_t fl = f.exp.floor();
        Exponent e = f.exp;
        if (fl != 0) {
          c *= rational_int_pow(Rational(static_cast<long>(f.atom->prime)), fl);
          e = e - Exponent(fl);
        }
        if (!e.is_zero()) rest.factors.push_back({f.atom, e});
        break;
      }
      case AtomKind::Exp:
        exp_args.push_back(scale(f.atom->args[0], f.exp.to_rational()));
        break;
      case AtomKind::PowBase:
        if (f.exp.is_integer() && f.exp.num > 0) expand.push_back({f.atom->args[0], f.exp.num});
        else rest.factors.push_back(f);
        break;
      default:
        rest.factors.push_back(f);
    }
  }
  if (!exp_args.empty()) {
    Poly arg = sum(exp_args);
    if (!arg.is_zero()) insert_sorted(rest, {kernel_atom(AtomKind::Exp, arg), Exponent(1)});
  }
  if (expand.empty()) {
    if (sgn(c) != 0) out.push_back({std::move(rest), std::move(c)});
    return;
  }
  std::vector<Term> one;
  one.push_back({std::move(rest), std::move(c)});
  Poly p = Poly::from_terms(std::move(one));
  for (auto& [base, k] : expand) p = p * pow(base, Exponent(k));
  for (const auto& term : p.terms()) out.push_back(term);
}

void check_size(std::size_t n) {
  if (n > size_limit())
    throw ResourceError("expression size limit exceeded (" + std::to_string(n) + " terms > " +
                        std::to_string(size_limit()) + ")");
}

}  // namespace

Atom indep_atom(int dir) {
  static const std::vector<Atom> table = [] {
    std::vector<Atom> t;
    for (int d = 0; d < 3; ++d) {
      auto n = make_node(AtomKind::Indep);
      n->var = d;
      t.push_back(n);
    }
    return t;
  }();
  return table.at(static_cast<std::size_t>(dir));
}

Atom basis_atom(int k) {
  static const std::vector<Atom> table = [] {
    std::vector<Atom> t;
    for (int d = 0; d < 4; ++d) {
      auto n = make_node(AtomKind::Basis);
      n->var = d;
      t.push_back(n);
    }
    return t;
  }();
  return table.at(static_cast<std::size_t>(k));
}

Atom jet_atom(int var, const JetIndex& j) {
  if (j.ix < kJetTable && j.iy < kJetTable && j.it < kJetTable && j.ix >= 0 && j.iy >= 0 && j.it >= 0)
    return jet_table()[((var * kJetTable + j.ix) * kJetTable + j.iy) * kJetTable + j.it];
  if (j.ix < 0 || j.iy < 0 || j.it < 0) throw DomainError("negative jet index");
  auto n = make_node(AtomKind::Jet);
  n->var = var;
  n->jet = j;
  return n;
}

Atom param_atom(const std::string& name) {
  auto n = make_node(AtomKind::Param);
  n->name = name;
  return n;
}

Atom func_atom(const std::string& name, std::vector<int> deriv, std::vector<Poly> args) {
  if (deriv.size() != args.size()) throw DomainError("derivative index does not match arity of " + name);
  auto n = make_node(AtomKind::Func);
  n->name = name;
  n->deriv = std::move(deriv);
  n->args = std::move(args);
  return n;
}

Poly indep(int dir) { return Poly::from_atom(indep_atom(dir)); }
Poly jet(int var, const JetIndex& j) { return Poly::from_atom(jet_atom(var, j)); }
Poly jet(int var, int ix, int iy, int it) { return jet(var, JetIndex{ix, iy, it}); }
Poly u_jet(const std::string& suffix) {
  JetIndex j;
  for (char ch : suffix) {
    if (ch == 'x') ++j.ix;
    else if (ch == 'y') ++j.iy;
    else if (ch == 't') ++j.it;
    else throw DomainError("bad jet suffix " + suffix);
  }
  return jet(U, j);
}
Poly param(const std::string& name) { return Poly::from_atom(param_atom(name)); }
Poly func(const std::string& name, std::vector<int> deriv, std::vector<Poly> args) {
  return Poly::from_atom(func_atom(name, std::move(deriv), std::move(args)));
}
Poly func_u(const std::string& name, int k) { return func(name, {k}, {jet(U, JetIndex{})}); }

// ---------------------------------------------------------------------------
// Poly

namespace {
const std::vector<Term>& empty_terms() {
  static const std::vector<Term> e;
  return e;
}
}  // namespace

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) {
    std::vector<Term> v;
    v.push_back({Monomial{}, c});
    d_ = std::make_shared<const std::vector<Term>>(std::move(v));
  }
}

Poly::Poly(long c) : Poly(Rational(c)) {}

Poly Poly::from_atom(const Atom& a, Exponent e) {
  std::vector<Term> v;
  Term t;
  t.mono.factors.push_back({a, e});
  t.coef = 1;
  v.push_back(std::move(t));
  if (e.is_zero()) return Poly(1);
  return from_terms(std::move(v));
}

Poly Poly::from_canonical(std::vector<Term> terms) {
  Poly p;
  if (!terms.empty()) {
    check_size(terms.size());
    p.d_ = std::make_shared<const std::vector<Term>>(std::move(terms));
  }
  return p;
}

Poly Poly::from_terms(std::vector<Term> in) {
  std::vector<Term> work;
  work.reserve(in.size());
  for (auto& t : in) {
    if (sgn(t.coef) == 0) continue;
    if (needs_special(t.mono)) canon_special(std::move(t), work);
    else work.push_back(std::move(t));
  }
  std::sort(work.begin(), work.end(),
            [](const Term& a, const Term& b) { return compare_monomials(a.mono, b.mono) < 0; });
  std::vector<Term> out;
  out.reserve(work.size());
  for (auto& t : work) {
    if (!out.empty() && compare_monomials(out.back().mono, t.mono) == 0) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  return from_canonical(std::move(out));
}

const std::vector<Term>& Poly::terms() const { return d_ ? *d_ : empty_terms(); }
std::size_t Poly::size() const { return d_ ? d_->size() : 0; }
bool Poly::is_constant() const { return size() == 0 || (size() == 1 && terms()[0].mono.empty()); }
Rational Poly::constant_value() const {
  if (size() == 1 && terms()[0].mono.empty()) return terms()[0].coef;
  return Rational(0);
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::vector<Term> out;
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0, j = 0;
  while (i < ta.size() && j < tb.size()) {
    int c = compare_monomials(ta[i].mono, tb[j].mono);
    if (c < 0) {
      out.push_back(ta[i++]);
    } else if (c > 0) {
      out.push_back(tb[j++]);
    } else {
      Rational s = ta[i].coef + tb[j].coef;
      if (sgn(s) != 0) out.push_back({ta[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < ta.size(); ++i) out.push_back(ta[i]);
  for (; j < tb.size(); ++j) out.push_back(tb[j]);
  return Poly::from_canonical(std::move(out));
}

Poly operator-(const Poly& a) { return scale(a, Rational(-1)); }
Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly scale(const Poly& a, const Rational& c) {
  if (sgn(c) == 0 || a.is_zero()) return Poly();
  if (c == 1) return a;
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back({t.mono, t.coef * c});
  return Poly::from_canonical(std::move(out));
}

Poly mul_term(const Poly& p, const Monomial& m, const Rational& c) {
  if (m.empty()) return scale(p, c);
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({multiply(m, t.mono), c * t.coef});
  return Poly::from_terms(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.size() == 1) return mul_term(b, a.terms()[0].mono, a.terms()[0].coef);
  if (b.size() == 1) return mul_term(a, b.terms()[0].mono, b.terms()[0].coef);
  if (a.size() * b.size() > 8 * size_limit())
    throw ResourceError("expression size limit exceeded in product");
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) out.push_back({multiply(ta.mono, tb.mono), ta.coef * tb.coef});
  return Poly::from_terms(std::move(out));
}

Poly& operator+=(Poly& a, const Poly& b) { return a = a + b; }
Poly& operator-=(Poly& a, const Poly& b) { return a = a - b; }
Poly& operator*=(Poly& a, const Poly& b) { return a = a * b; }

Poly sum(const std::vector<Poly>& parts) {
  std::size_t n = 0;
  const Poly* only = nullptr;
  int nonzero = 0;
  for (const auto& p : parts) {
    n += p.size();
    if (!p.is_zero()) {
      ++nonzero;
      only = &p;
    }
  }
  if (nonzero == 0) return Poly();
  if (nonzero == 1) return *only;
  std::vector<Term> all;
  all.reserve(n);
  for (const auto& p : parts)
    for (const auto& t : p.terms()) all.push_back(t);
  return Poly::from_terms(std::move(all));
}

Poly pow(const Poly& p, Exponent e) {
  if (e.is_zero()) return Poly(1);
  if (e == Exponent(1)) return p;
  if (p.is_zero()) {
    if (e.num < 0) throw DomainError("division by zero");
    return Poly();
  }
  if (p.size() == 1) {
    const Term& t = p.terms()[0];
    Poly coef = rational_power(t.coef, e);
    std::vector<Term> v;
    v.push_back({power(t.mono, e), Rational(1)});
    return coef * Poly::from_terms(std::move(v));
  }
  if (e.is_integer() && e.num > 0) {
    Poly result(1), base = p;
    std::int64_t k = e.num;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }
  Rational lead = leading_coefficient(p);
  if (!e.is_integer() && sgn(lead) < 0) lead = -lead;
  Poly base = scale(p, 1 / lead);
  return rational_power(lead, e) * Poly::from_atom(kernel_atom(AtomKind::PowBase, base), e);
}

Poly sqrt(const Poly& p) { return pow(p, Exponent(1, 2)); }

Poly operator/(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.is_constant()) return scale(a, 1 / b.constant_value());
  return a * pow(b, Exponent(-1));
}

Poly exp_of(const Poly& arg) {
  if (arg.is_zero()) return Poly(1);
  return Poly::from_atom(kernel_atom(AtomKind::Exp, arg));
}

Poly sin_of(const Poly& arg) {
  if (arg.is_zero()) return Poly();
  if (sgn(leading_coefficient(arg)) < 0) return -Poly::from_atom(kernel_atom(AtomKind::Sin, -arg));
  return Poly::from_atom(kernel_atom(AtomKind::Sin, arg));
}

Poly cos_of(const Poly& arg) {
  if (arg.is_zero()) return Poly(1);
  if (sgn(leading_coefficient(arg)) < 0) return Poly::from_atom(kernel_atom(AtomKind::Cos, -arg));
  return Poly::from_atom(kernel_atom(AtomKind::Cos, arg));
}

// ---------------------------------------------------------------------------
// inspection

bool any_atom(const Poly& p, const std::function<bool(const AtomNode&)>& pred) {
  for (const auto& t : p.terms())
    for (const auto& f : t.mono.factors) {
      if (pred(*f.atom)) return true;
      for (const auto& a : f.atom->args)
        if (any_atom(a, pred)) return true;
    }
  return false;
}

bool contains_atom(const Poly& p, const Atom& a) {
  return any_atom(p, [&](const AtomNode& n) { return compare_atoms(n, *a) == 0; });
}

int max_jet_order(const Poly& p, int var) {
  int best = -1;
  any_atom(p, [&](const AtomNode& n) {
    if (n.kind == AtomKind::Jet && n.var == var) best = std::max(best, n.jet.order());
    return false;
  });
  return best;
}

Rational leading_coefficient(const Poly& p) { return p.is_zero() ? Rational(0) : p.terms()[0].coef; }

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return scale(p, 1 / leading_coefficient(p));
}

std::string atom_debug_name(const AtomNode& a) {
  std::ostringstream os;
  switch (a.kind) {
    case AtomKind::NumBase: os << a.prime; break;
    case AtomKind::Param: os << a.name; break;
    case AtomKind::Indep: os << dir_name(a.var); break;
    case AtomKind::Basis: os << "d_" << (a.var == 3 ? "u" : dir_name(a.var)); break;
    case AtomKind::Jet: os << (a.var == U ? "u" : "v") << (a.jet.order() ? "_" + a.jet.suffix() : ""); break;
    case AtomKind::Func: {
      os << a.name << "[";
      for (std::size_t i = 0; i < a.deriv.size(); ++i) os << (i ? "," : "") << a.deriv[i];
      os << "]";
      break;
    }
    case AtomKind::Exp: os << "exp(..)"; break;
    case AtomKind::Sin: os << "sin(..)"; break;
    case AtomKind::Cos: os << "cos(..)"; break;
    case AtomKind::PowBase: os << "(..)"; break;
  }
  return os.str();
}

}  // namespace gksym

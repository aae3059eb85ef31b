#pragma once

// Canonical expanded form: a sorted sum of rational multiples of monomials over
// atomic kernels. Every Poly value is canonical; structural equality is
// mathematical equality within the supported fragment.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gksym/config.hpp"

namespace gksym {

using Rational = mpq_class;

// Small exact exponent, kept reduced with a positive denominator.
struct Exponent {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Exponent() = default;
  Exponent(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Exponent(std::int64_t n, std::int64_t d);

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }
  std::int64_t floor() const;
  Rational to_rational() const;
  std::string str() const;

  friend Exponent operator+(Exponent a, Exponent b);
  friend Exponent operator-(Exponent a, Exponent b);
  friend Exponent operator*(Exponent a, Exponent b);
  friend Exponent operator-(Exponent a) { return Exponent(-a.num, a.den); }
  friend bool operator==(Exponent a, Exponent b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(Exponent a, Exponent b);
};

enum Dir : int { X = 0, Y = 1, T = 2 };

const char* dir_name(int d);

// Multi-index of a jet coordinate: counts of x, y and t differentiations.
struct JetIndex {
  int ix = 0;
  int iy = 0;
  int it = 0;

  int order() const { return ix + iy + it; }
  int operator[](int d) const { return d == X ? ix : (d == Y ? iy : it); }
  JetIndex plus(int d, int k = 1) const;
  JetIndex minus(const JetIndex& o) const { return {ix - o.ix, iy - o.iy, it - o.it}; }
  JetIndex add(const JetIndex& o) const { return {ix + o.ix, iy + o.iy, it + o.it}; }
  bool covers(const JetIndex& o) const { return ix >= o.ix && iy >= o.iy && it >= o.it; }
  // Letter suffix "xxy" (sorted x < y < t); empty for the zero index.
  std::string suffix() const;

  friend bool operator==(const JetIndex&, const JetIndex&) = default;
  friend auto operator<=>(const JetIndex&, const JetIndex&) = default;
};

// All indices with 1 <= order <= max_order, ordered by order then lexicographically.
std::vector<JetIndex> jet_indices_up_to(int max_order);

enum class AtomKind : std::uint8_t {
  NumBase,  // prime p, only under a fractional power
  Param,    // named parameter (alpha, beta, c1, ...)
  Indep,    // x, y, t
  Basis,    // d_x, d_y, d_t, d_u markers for generator syntax
  Jet,      // u_J or v_J (v is the nonlocal variable)
  Func,     // arbitrary function application with derivative multi-index
  Exp,
  Sin,
  Cos,
  PowBase,  // non-monomial base under a negative or fractional power
};

enum DepVar : int { U = 0, V = 1 };

class Poly;
struct AtomNode;
struct Term;
using Atom = std::shared_ptr<const AtomNode>;

class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c);             // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(static_cast<long>(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly from_atom(const Atom& a, Exponent e = 1);
  // Canonicalizes arbitrary (unsorted, duplicated, special-kernel) terms.
  static Poly from_terms(std::vector<Term> terms);
  // Trusted: terms already sorted, merged, nonzero and canonical.
  static Poly from_canonical(std::vector<Term> terms);

  const std::vector<Term>& terms() const;
  std::size_t size() const;
  bool is_zero() const { return size() == 0; }
  bool is_constant() const;
  // Value of the constant when is_constant(); zero otherwise.
  Rational constant_value() const;
  bool shares_storage(const Poly& o) const { return d_ == o.d_; }

 private:
  std::shared_ptr<const std::vector<Term>> d_;
};

struct AtomNode {
  AtomKind kind = AtomKind::Param;
  int var = 0;             // Indep/Basis: direction (3 = d_u); Jet: DepVar
  JetIndex jet;            // Jet
  std::int64_t prime = 0;  // NumBase
  std::string name;        // Param, Func
  std::vector<int> deriv;  // Func: per-argument derivative counts; {-1} = antiderivative
  std::vector<Poly> args;  // Func arguments; Exp/Sin/Cos/PowBase single argument
};

struct Factor {
  Atom atom;
  Exponent exp;
};

struct Monomial {
  std::vector<Factor> factors;  // sorted by atom, nonzero exponents

  bool empty() const { return factors.empty(); }
};

struct Term {
  Monomial mono;
  Rational coef;
};

int compare_atoms(const AtomNode& a, const AtomNode& b);
inline int compare_atoms(const Atom& a, const Atom& b) {
  return a.get() == b.get() ? 0 : compare_atoms(*a, *b);
}
int compare_monomials(const Monomial& a, const Monomial& b);
int compare_polys(const Poly& a, const Poly& b);

inline bool operator==(const Poly& a, const Poly& b) { return compare_polys(a, b) == 0; }
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
struct AtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return compare_atoms(a, b) < 0; }
};
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) < 0; }
};
struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return compare_polys(a, b) < 0; }
};

Monomial multiply(const Monomial& a, const Monomial& b);
Monomial power(const Monomial& a, Exponent e);
// Monomial with the exponent of `atom` changed by delta (factor removed at zero).
Monomial bump(const Monomial& m, const Atom& atom, Exponent delta);
Exponent degree_of(const Monomial& m, const Atom& atom);

// ---- atom constructors -----------------------------------------------------
Atom indep_atom(int dir);
Atom basis_atom(int k);
Atom jet_atom(int var, const JetIndex& j);
Atom param_atom(const std::string& name);
Atom func_atom(const std::string& name, std::vector<int> deriv, std::vector<Poly> args);

Poly indep(int dir);
Poly jet(int var, const JetIndex& j);
Poly jet(int var, int ix, int iy, int it);
Poly u_jet(const std::string& suffix);
Poly param(const std::string& name);
Poly func(const std::string& name, std::vector<int> deriv, std::vector<Poly> args);
// f^{(k)}(u) for a one-argument function of u.
Poly func_u(const std::string& name, int k = 0);

// ---- arithmetic ------------------------------------------------------------
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& c);
Poly& operator+=(Poly& a, const Poly& b);
Poly& operator-=(Poly& a, const Poly& b);
Poly& operator*=(Poly& a, const Poly& b);
Poly pow(const Poly& p, Exponent e);
Poly sqrt(const Poly& p);
Poly exp_of(const Poly& arg);
Poly sin_of(const Poly& arg);
Poly cos_of(const Poly& arg);
// Multiply a canonical polynomial by a single monomial term.
Poly mul_term(const Poly& p, const Monomial& m, const Rational& c);
// Sum of many polynomials with a single canonicalization pass.
Poly sum(const std::vector<Poly>& parts);

// ---- inspection ------------------------------------------------------------
bool contains_atom(const Poly& p, const Atom& a);
// True if any atom (recursively through kernel arguments) satisfies pred.
bool any_atom(const Poly& p, const std::function<bool(const AtomNode&)>& pred);
// Highest jet order of var appearing anywhere (-1 when absent).
int max_jet_order(const Poly& p, int var);
// First term coefficient (canonical leading coefficient); zero for the zero poly.
Rational leading_coefficient(const Poly& p);
// Scale so the leading coefficient is +1 (zero stays zero).
Poly make_monic(const Poly& p);

std::string atom_debug_name(const AtomNode& a);

}  // namespace gksym

#include "gksym/numcheck.hpp"

#include <cmath>
#include <random>

namespace gksym {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::mt19937_64 stream(std::uint64_t seed, const std::string& key) { return std::mt19937_64(fnv1a(key, seed * 0x9E3779B97F4A7C15ULL + 1)); }

double uniform(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

// Nonzero-ish draw in [-2, 2] avoiding a neighbourhood of zero.
double draw_param(std::mt19937_64& g) {
  double v = uniform(g, 0.2, 2.0);
  return uniform(g, 0, 1) < 0.5 ? -v : v;
}

double falling(int n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

// d^k/dz^k of sum c_n z^n (k = -1: antiderivative with zero constant).
double poly_derivative(const std::vector<double>& c, int k, double z) {
  double s = 0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    int in = static_cast<int>(n);
    if (k < 0) {
      s += c[n] * std::pow(z, in + 1) / (in + 1);
    } else if (in >= k) {
      s += c[n] * falling(in, k) * std::pow(z, in - k);
    }
  }
  return s;
}

constexpr int kTaylorDegree = 5;

}  // namespace

double NumericAssignment::function(const std::string& name, const std::vector<int>& deriv,
                                   const std::vector<double>& args) const {
  auto g = stream(seed, "fn:" + name + "/" + std::to_string(args.size()));
  if (args.size() == 1) {
    std::vector<double> c(4);
    for (auto& x : c) x = uniform(g, -1, 1);
    if (convex.count(name) && std::fabs(c[2]) < 0.5) c[2] = c[2] < 0 ? -0.5 - std::fabs(c[2]) : 0.5 + c[2];
    return poly_derivative(c, deriv[0], args[0]);
  }
  double total = 0;
  for (int k = 0; k < 2; ++k) {
    double amp = uniform(g, 0.5, 1.5);
    double lin = 0, factor = amp;
    for (std::size_t j = 0; j < args.size(); ++j) {
      double w = uniform(g, -1, 1);
      lin += w * args[j];
      if (deriv[j] < 0) throw DomainError("antiderivative of a multivariate function has no numeric model");
      factor *= std::pow(w, deriv[j]);
    }
    total += factor * std::exp(lin);
  }
  return total;
}

double NumericAssignment::value(const AtomNode& a) const {
  switch (a.kind) {
    case AtomKind::NumBase: return static_cast<double>(a.prime);
    case AtomKind::Param: {
      if (auto it = fixed.find(a.name); it != fixed.end()) return it->second;
      if (strict) throw DomainError("unassigned parameter " + a.name);
      auto g = stream(seed, "param:" + a.name);
      return positive.count(a.name) ? uniform(g, 0.2, 2.0) : draw_param(g);
    }
    case AtomKind::Indep: {
      const std::string n = dir_name(a.var);
      if (auto it = fixed.find(n); it != fixed.end()) return it->second;
      if (strict) throw DomainError("unassigned variable " + n);
      auto g = stream(seed, "indep:" + n);
      return uniform(g, -2, 2);
    }
    case AtomKind::Basis: throw DomainError("generator markers have no numeric value");
    case AtomKind::Jet: {
      const std::string n = std::string(a.var == U ? "u" : "v") + "_" + a.jet.suffix();
      if (auto it = fixed.find(n); it != fixed.end()) return it->second;
      if (strict) throw DomainError("unassigned jet " + n);
      if (jets == Jets::OffShell) {
        auto g = stream(seed, "jet:" + n);
        return uniform(g, -2, 2);
      }
      // Taylor model: random coefficients of monomials x^a y^b t^c, a+b+c <= 5.
      auto g = stream(seed, std::string("taylor:") + (a.var == U ? "u" : "v"));
      const double pt[3] = {value(*indep_atom(X)), value(*indep_atom(Y)), value(*indep_atom(T))};
      double s = 0;
      for (int i = 0; i <= kTaylorDegree; ++i)
        for (int j = 0; i + j <= kTaylorDegree; ++j)
          for (int k = 0; i + j + k <= kTaylorDegree; ++k) {
            double c = uniform(g, -1, 1);
            if (i < a.jet.ix || j < a.jet.iy || k < a.jet.it) continue;
            s += c * falling(i, a.jet.ix) * falling(j, a.jet.iy) * falling(k, a.jet.it) *
                 std::pow(pt[0], i - a.jet.ix) * std::pow(pt[1], j - a.jet.iy) * std::pow(pt[2], k - a.jet.it);
          }
      return s;
    }
    case AtomKind::Func: {
      std::vector<double> args;
      for (const auto& p : a.args) args.push_back(eval(p, *this));
      return function(a.name, a.deriv, args);
    }
    case AtomKind::Exp: return std::exp(eval(a.args[0], *this));
    case AtomKind::Sin: return std::sin(eval(a.args[0], *this));
    case AtomKind::Cos: return std::cos(eval(a.args[0], *this));
    case AtomKind::PowBase: return eval(a.args[0], *this);
  }
  return 0;
}

namespace {

double power_of(double base, Exponent e) {
  if (e.num < 0 && std::fabs(base) < 1e-12) throw SingularityError("division by a value below 1e-12");
  if (e.is_integer()) return std::pow(base, static_cast<double>(e.num));
  if (base < 0) throw SingularityError("fractional power of a negative value");
  return std::pow(base, static_cast<double>(e.num) / static_cast<double>(e.den));
}

double term_value(const Term& t, const NumericAssignment& a) {
  double v = t.coef.get_d();
  for (const auto& f : t.mono.factors) v *= power_of(a.value(*f.atom), f.exp);
  return v;
}

}  // namespace

double eval(const Poly& p, const NumericAssignment& a) {
  double s = 0;
  for (const auto& t : p.terms()) s += term_value(t, a);
  return s;
}

SpotCheck spot_check_zero(const Poly& p, int trials, double tol, std::uint64_t seed, NumericAssignment base) {
  return spot_check_sum({p}, trials, tol, seed, std::move(base));
}

SpotCheck spot_check_sum(const std::vector<Poly>& parts, int trials, double tol, std::uint64_t seed,
                         NumericAssignment base) {
  SpotCheck r;
  for (int k = 0; k < trials; ++k) {
    base.seed = seed + static_cast<std::uint64_t>(k);
    double s = 0, scale = 0;
    try {
      for (const auto& p : parts)
        for (const auto& t : p.terms()) {
          double v = term_value(t, base);
          s += v;
          scale = std::max(scale, std::fabs(v));
        }
    } catch (const SingularityError&) {
      ++r.singular;
      continue;
    }
    ++r.trials;
    double a = std::fabs(s);
    r.max_abs = std::max(r.max_abs, a);
    double rel = scale > 0 ? a / scale : 0;
    r.max_relative = std::max(r.max_relative, rel);
    if (!(a <= tol * scale)) r.pass = false;
  }
  return r;
}

}  // namespace gksym

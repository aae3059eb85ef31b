#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gksym/poly.hpp"

namespace gksym {

class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Deterministic numeric values for every atom kind. Values are derived from a
// hash of (seed, atom identity), so they do not depend on traversal order.
//   Jets: OffShell draws each jet coordinate independently; Taylor evaluates
//   derivatives of a random degree-5 polynomial u(x, y, t) (and v likewise).
//   Functions of one argument are random cubics; functions of several
//   arguments are sums of two exponentials of random linear forms.
struct NumericAssignment {
  enum class Jets { OffShell, Taylor };

  std::uint64_t seed = 1;
  Jets jets = Jets::OffShell;
  std::set<std::string> positive;               // parameters drawn from (0.2, 2)
  std::map<std::string, double> fixed;          // explicit parameter / variable values
  std::set<std::string> convex;                 // one-argument functions with |quadratic coefficient| >= 0.5
  bool strict = false;                          // when set, only atoms listed in `fixed` are assigned

  double value(const AtomNode& a) const;
  double function(const std::string& name, const std::vector<int>& deriv, const std::vector<double>& args) const;
};

double eval(const Poly& p, const NumericAssignment& a);

struct SpotCheck {
  bool pass = true;
  int trials = 0;
  int singular = 0;           // trials skipped because of a singular value
  double max_abs = 0;         // largest |value|
  double max_relative = 0;    // largest |value| / (largest summand magnitude)
};

// pass iff |value| < tol * M in every trial, M the largest summand magnitude.
SpotCheck spot_check_zero(const Poly& p, int trials, double tol, std::uint64_t seed = 1,
                          NumericAssignment base = {});

// Same test for an unevaluated sum of parts that is claimed to vanish, so the
// cancellation is checked numerically rather than by the canonical form.
SpotCheck spot_check_sum(const std::vector<Poly>& parts, int trials, double tol, std::uint64_t seed = 1,
                         NumericAssignment base = {});

}  // namespace gksym

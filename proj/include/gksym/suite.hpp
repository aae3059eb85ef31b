#pragma once

// Replays of the reference results against the golden data. Every check
// returns a JSON report and whether each verdict matched its expectation.

#include <cstdint>

#include <json.hpp>

#include "gksym/golden.hpp"
#include "gksym/numcheck.hpp"

namespace gksym {

struct CheckResult {
  nlohmann::json report;
  bool pass = true;
};

struct SuiteOptions {
  bool numeric = false;  // add floating-point spot checks of the zero claims
  int trials = 100;
  double tol = 1e-9;
  std::uint64_t seed = 1;
};

// Short description of a nonzero expression: term count and leading terms.
nlohmann::json residual_summary(const Poly& p, std::size_t max_terms = 3);

// Every generator of every row (with the three base symmetries), including the
// diagnosis of entries recorded as misprints.
CheckResult replay_table1();

// Listed determining equations against the generated system: exact match up to
// scaling, then span membership, then a diff against the closest equation.
CheckResult replay_appendix_a();

// Residual system after substituting the solved ansatz, compared as sets.
CheckResult replay_ansatz_residual();

// Adjoint equation and the strict, quasi and nonlinear classifications.
CheckResult check_theorems();

// Formula vectors, transcribed vectors and their comparison for every case.
CheckResult replay_section5(const SuiteOptions& opts = {});
CheckResult replay_conservation(const std::vector<ConservationCase>& cases, const SuiteOptions& opts = {});

// All of the above in one report.
CheckResult paper_suite(const SuiteOptions& opts = {});

}  // namespace gksym

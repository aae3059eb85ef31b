// Acceptance run: one PASS/FAIL line per criterion. Limits are pinned here.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "gksym/dsl.hpp"
#include "gksym/suite.hpp"
#include "support.hpp"

using namespace gksym;

namespace {

constexpr double kTableSeconds = 120;
constexpr double kListedSeconds = 300;
constexpr double kVectorSeconds = 600;
constexpr double kExactFraction = 0.95;
constexpr double kNumericTol = 1e-9;
constexpr int kNumericSeeds = 100;
constexpr int kKernelCases = 100;
constexpr int kIdentityCases = 50;
constexpr int kDerivativeCases = 200;
constexpr int kRoundTrips = 1000;
constexpr int kConventionCases = 20;

struct Line {
  bool pass;
  std::string detail;
};

bool all_ok = true;

void report(const std::string& name, const std::function<Line()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Line line{false, ""};
  try {
    line = body();
  } catch (const std::exception& e) {
    line = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  all_ok = all_ok && line.pass;
  std::ostringstream os;
  os.precision(3);
  os << (line.pass ? "PASS " : "FAIL ") << name << ": " << line.detail << " (" << secs << " s)";
  std::cout << os.str() << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  report("table-replay", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = replay_table1();
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << r.report.at("rows") << " rows, " << r.report.at("holds") << "/" << r.report.at("checks")
       << " generators hold, " << r.report.at("typos_diagnosed") << " misprints diagnosed";
    return Line{r.pass && r.report.at("rows").get<int>() == 18 && secs < kTableSeconds, os.str()};
  });

  const auto theorems = check_theorems();
  report("adjoint-equation", [&] {
    const auto& a = theorems.report.at("adjoint");
    return Line{a.at("corrected_equal").get<bool>(),
                a.at("corrected_equal").get<bool>() ? "generated adjoint equals the transcription term by term"
                                                    : "generated adjoint differs"};
  });

  report("self-adjointness-classification", [&] {
    const auto& s = theorems.report.at("strict");
    const auto& q = theorems.report.at("quasi");
    const auto& n = theorems.report.at("nonlinear");
    int cases = 0;
    for (const auto& c : n.at("cases")) cases += c.at("pass").get<bool>();
    std::ostringstream os;
    os << "strict " << s.at("report").at("verdict").get<std::string>() << " (witness "
       << s.at("report").at("witness").at("coefficient").get<std::string>() << " on "
       << s.at("report").at("witness").at("monomial").get<std::string>() << "); quasi "
       << q.at("verdict").get<std::string>() << "; nonlinear cases " << cases << "/5 zero the system";
    return Line{s.at("pass").get<bool>() && q.at("pass").get<bool>() && n.at("pass").get<bool>(), os.str()};
  });

  report("listed-determining-equations", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = replay_appendix_a();
    const double secs = seconds_since(t0);
    const double fraction = r.report.at("exact_fraction").get<double>();
    std::ostringstream os;
    os << r.report.at("exact") << "/" << r.report.at("listed") << " exact up to scaling, " << r.report.at("span")
       << " in span, " << r.report.at("mismatch") << " reported with diffs";
    for (const auto& e : r.report.at("equations"))
      if (e.at("match") == "mismatch")
        os << "; #" << e.at("index") << " differs by " << e.at("diff").at("difference").get<std::string>();
    return Line{fraction >= kExactFraction && r.pass && secs < kListedSeconds, os.str()};
  });

  report("ansatz-residual-system", [] {
    const auto r = replay_ansatz_residual();
    std::ostringstream os;
    os << r.report.at("computed") << " computed equations equal the " << r.report.at("listed")
       << " listed ones as sets (stated count " << r.report.at("stated_count") << ")";
    return Line{r.pass, os.str()};
  });

  report("conserved-vector-replay", [] {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteOptions opts;
    opts.numeric = true;
    opts.trials = kNumericSeeds;
    opts.tol = kNumericTol;
    const auto r = replay_section5(opts);
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << r.report.at("formula_divergence_zero") << "/" << r.report.at("vectors")
       << " formula vectors conserve; transcribed: " << r.report.at("transcribed_verified") << " verified, "
       << r.report.at("transcribed_corrected") << " verified after correction, " << r.report.at("transcribed_flagged")
       << " flagged with failing terms";
    const bool all_formula = r.report.at("formula_divergence_zero") == r.report.at("vectors");
    return Line{r.pass && all_formula && secs < kVectorSeconds, os.str()};
  });

  report("property-suites", [] {
    TotalDerivative td;
    int kernel = 0, identity = 0, derivative = 0, round_trip = 0, numeric = 0, numeric_total = 0;
    double worst = 0;
    for (int s = 1; s <= kKernelCases; ++s) {
      testing::RandomExpr gen(s);
      std::vector<Poly> parts;
      for (int d = 0; d < 3; ++d) parts.push_back(euler_lagrange(td(gen.jet_poly(3, 2), d), U));
      kernel += sum(parts).is_zero();
      const auto sc = spot_check_sum(parts, kNumericSeeds, kNumericTol, s);
      numeric += sc.pass;
      ++numeric_total;
      worst = std::max(worst, sc.max_relative);
    }
    for (int s = 1; s <= kIdentityCases; ++s) {
      testing::RandomExpr gen(s);
      const Generator g = gen.generator(2);
      const Poly L = gen.jet_poly(3, 2);
      const auto cv = noether_vector(g, L);
      identity += noether_identity_defect(g, L, cv).is_zero();
      std::vector<Poly> parts = {prolonged_action(g, L), L * (td(g.xi[0], X) + td(g.xi[1], Y) + td(g.xi[2], T)),
                                 -(characteristic(g) * euler_lagrange(L, U))};
      for (int d = 0; d < 3; ++d) parts.push_back(-td(cv.c[d], d));
      const auto sc = spot_check_sum(parts, kNumericSeeds, kNumericTol, s);
      numeric += sc.pass;
      ++numeric_total;
      worst = std::max(worst, sc.max_relative);
    }
    for (int s = 1; s <= kDerivativeCases; ++s) {
      testing::RandomExpr gen(s);
      const Poly a = gen.jet_poly(3, 3), b = gen.jet_poly(3, 3);
      const int i = gen.uniform(0, 2), j = gen.uniform(0, 2);
      derivative += td(td(a, i), j) == td(td(a, j), i) && td(a * b, i) == td(a, i) * b + a * td(b, i);
    }
    for (int s = 1; s <= kRoundTrips; ++s) {
      testing::RandomExpr gen(s);
      Poly p = gen.jet_poly(gen.uniform(1, 5), 4);
      if (s % 3 == 0) p *= sin_of(scale(sqrt(param("c")), gen.coefficient()) * indep(Y));
      round_trip += parse_poly(print_poly(p)) == p;
    }
    std::ostringstream os;
    os << "kernel " << kernel << "/" << kKernelCases << ", identity " << identity << "/" << kIdentityCases
       << ", commutativity+Leibniz " << derivative << "/" << kDerivativeCases << ", round-trip " << round_trip << "/"
       << kRoundTrips << ", numeric " << numeric << "/" << numeric_total << " (worst relative " << worst << ")";
    return Line{kernel == kKernelCases && identity == kIdentityCases && derivative == kDerivativeCases &&
                    round_trip == kRoundTrips && numeric == numeric_total && worst < kNumericTol,
                os.str()};
  });

  report("weighted-vs-classical", [] {
    int agree = 0;
    for (int s = 1; s <= kConventionCases; ++s) {
      testing::RandomExpr gen(1000 + s);
      const Generator g = gen.generator(2);
      const int order = 1 + s % 4;
      const Poly L = gen.jet_poly(2, order, 1) + gen.jet_poly(1, std::min(order, 2), 2);
      const auto diff = noether_vector(g, L) - classical_noether_vector(g, L);
      agree += raw_divergence(diff).is_zero();
    }
    std::ostringstream os;
    os << agree << "/" << kConventionCases << " random cases differ by a divergence-free vector";
    return Line{agree == kConventionCases, os.str()};
  });

  return all_ok ? 0 : 1;
}

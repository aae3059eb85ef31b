// gksym: command-line front end for the symmetry, self-adjointness and
// conservation-law engine.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse
// error, 3 expression size limit exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gksym/suite.hpp"

using namespace gksym;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Globals {
  std::string format = "text";
  std::size_t size_limit = 0;
  unsigned threads = 0;
  std::string golden_dir;
};

// Text of the most recent parse, for caret diagnostics.
std::string last_source;

Generator gen_of(const std::string& src, const ParseContext& ctx = ParseContext::standard()) {
  last_source = src;
  return parse_generator(src, ctx);
}

Poly poly_of(const std::string& src, const ParseContext& ctx) {
  last_source = src;
  return parse_poly(src, ctx);
}

PDEFamily family_of(const std::string& spec) {
  last_source = spec;
  return resolve_family(spec);
}

void emit(const Globals& g, const json& report, const std::function<void(std::ostream&)>& text) {
  if (g.format == "json")
    std::cout << report.dump(1) << "\n";
  else
    text(std::cout);
}

// Parse context for a family spec: conserved-vector cases bring their own
// function signatures and abbreviations.
ParseContext context_for(const std::string& family) {
  if (family.rfind("s5:", 0) == 0) return context_from_json(load_golden("section5/" + family.substr(3) + ".json"));
  return ParseContext::standard();
}

// "NODE = EXPR" solved for NODE, an unknown-function derivative.
ConstraintRule parse_solved_constraint(const std::string& src, const ParseContext& ctx) {
  const auto eq = src.find('=');
  if (eq == std::string::npos) throw DomainError("constraint must read 'NODE = EXPR': " + src);
  const Poly lead = poly_of(src.substr(0, eq), ctx);
  const Poly rhs = poly_of(src.substr(eq + 1), ctx);
  if (lead.size() != 1 || lead.terms()[0].mono.factors.size() != 1 ||
      lead.terms()[0].mono.factors[0].atom->kind != AtomKind::Func)
    throw DomainError("left side of a constraint must be a single function derivative: " + src);
  const std::string name = lead.terms()[0].mono.factors[0].atom->name;
  std::vector<Atom> formal;
  for (const auto& a : ctx.functions.at(name)) {
    if (a == "x") formal.push_back(indep_atom(X));
    else if (a == "y") formal.push_back(indep_atom(Y));
    else if (a == "t") formal.push_back(indep_atom(T));
    else formal.push_back(jet_atom(U, {}));
  }
  return solve_constraint(lead - rhs, name, formal, &lead);
}

void add_functions(ParseContext& ctx, const std::vector<std::string>& decls) {
  // NAME:x,y,t
  for (const auto& d : decls) {
    const auto colon = d.find(':');
    if (colon == std::string::npos) throw DomainError("function declaration must read NAME:args, got " + d);
    std::vector<std::string> args;
    std::stringstream ss(d.substr(colon + 1));
    for (std::string a; std::getline(ss, a, ',');) args.push_back(a);
    ctx.declare_function(d.substr(0, colon), args);
  }
}

// ---- commands ---------------------------------------------------------------

int cmd_prolong(const Globals& g, const std::string& gen_src, int order) {
  const Generator gen = gen_of(gen_src);
  const auto pr = prolong(gen, order);
  json j{{"generator", print_generator(gen)}, {"order", order}, {"characteristic", print_poly(characteristic(gen))}};
  json coeffs = json::object();
  for (const auto& [idx, c] : pr.eta_coeffs) coeffs["u_" + idx.suffix()] = print_poly(c);
  j["coefficients"] = coeffs;
  emit(g, j, [&](std::ostream& os) {
    os << "generator: " << j["generator"].get<std::string>() << "\n";
    os << "characteristic: " << j["characteristic"].get<std::string>() << "\n";
    for (const auto& [idx, c] : pr.eta_coeffs) os << "eta[u_" << idx.suffix() << "] = " << print_poly(c) << "\n";
  });
  return kPass;
}

int cmd_detsys(const Globals& g, const std::string& family) {
  const PDEFamily fam = family_of(family);
  const auto ds = generate_determining_system(fam);
  json eqs = json::array();
  for (std::size_t k = 0; k < ds.size(); ++k)
    eqs.push_back({{"monomial", print_monomial(ds.provenance[k])}, {"equation", print_poly(ds.equations[k])}});
  json j{{"family", fam.label}, {"count", ds.size()}, {"equations", eqs}};
  emit(g, j, [&](std::ostream& os) {
    os << ds.size() << " determining equations for " << fam.label << "\n";
    for (std::size_t k = 0; k < ds.size(); ++k)
      os << "[" << print_monomial(ds.provenance[k]) << "] " << print_poly(ds.equations[k]) << " = 0\n";
  });
  return kPass;
}

int cmd_check_sym(const Globals& g, const std::string& gen_src, const std::string& family) {
  const PDEFamily fam = family_of(family);
  const Generator gen = gen_of(gen_src, context_for(family));
  const auto res = check_symmetry(gen, fam);
  json j{{"generator", print_generator(gen)}, {"family", fam.label}, {"holds", res.holds}};
  if (!res.holds) {
    j["residual"] = residual_summary(res.residual, 10);
    j["residual"]["expression"] = print_poly(res.residual);
  }
  emit(g, j, [&](std::ostream& os) {
    os << (res.holds ? "symmetry: " : "not a symmetry: ") << j["generator"].get<std::string>() << " of " << fam.label
       << "\n";
    if (!res.holds) os << "residual (" << res.residual.size() << " terms): " << print_poly(res.residual) << "\n";
  });
  return res.holds ? kPass : kFail;
}

int cmd_adjoint(const Globals& g, const std::string& family) {
  const PDEFamily fam = family_of(family);
  const Poly adj = adjoint_equation(fam);
  json j{{"family", fam.label}, {"lagrangian", print_poly(formal_lagrangian(fam))}, {"adjoint", print_poly(adj)}};
  emit(g, j, [&](std::ostream& os) { os << print_poly(adj) << " = 0\n"; });
  return kPass;
}

int cmd_selfadjoint(const Globals& g, const std::string& mode, const std::string& family, const std::string& expect) {
  const PDEFamily fam = family_of(family);
  SelfAdjointnessReport r;
  if (mode == "strict") r = check_strict(fam);
  else if (mode == "quasi") r = check_quasi(fam);
  else r = check_nonlinear(fam);
  json j = report_to_json(r);
  j["family"] = fam.label;
  const bool ok = expect.empty() || expect == r.verdict;
  if (!expect.empty()) j["expected_verdict"] = expect;
  j["pass"] = ok;
  emit(g, j, [&](std::ostream& os) {
    os << mode << " self-adjointness of " << fam.label << ": " << r.verdict << "\n";
    if (!r.witness_monomial.is_zero())
      os << "witness: coefficient " << r.witness_coefficient.get_str() << " on " << print_poly(r.witness_monomial) << "\n";
    for (const auto& c : r.constraints) os << "constraint: " << print_poly(c) << " = 0\n";
    for (const auto& c : r.derived) os << "derived: " << print_poly(c) << " = 0\n";
    if (!expect.empty()) os << (ok ? "matches" : "differs from") << " expected verdict " << expect << "\n";
  });
  return ok ? kPass : kFail;
}

int cmd_conslaw(const Globals& g, const std::string& gen_src, const std::string& family, std::string phi_src,
                const std::vector<std::string>& functions, std::vector<std::string> constraints) {
  const PDEFamily fam = family_of(family);
  ParseContext ctx = context_for(family);
  add_functions(ctx, functions);
  std::vector<ConstraintRule> aux;
  if (family.rfind("s5:", 0) == 0 && phi_src.empty()) {
    const auto doc = load_golden("section5/" + family.substr(3) + ".json");
    phi_src = doc.at("phi");
    if (doc.contains("phi_constraints"))
      for (const auto& c : doc.at("phi_constraints"))
        constraints.push_back(c.at("solve_for").get<std::string>() + " = " + c.at("solve_for").get<std::string>() +
                              " - (" + c.at("equation").get<std::string>() + ")");
  }
  if (phi_src.empty()) throw DomainError("--phi is required for this family");
  for (const auto& c : constraints) aux.push_back(parse_solved_constraint(c, ctx));
  const Generator gen = gen_of(gen_src, ctx);
  ConservedVector cv = conserved_vector(gen, fam, poly_of(phi_src, ctx));
  cv.aux = aux;
  const Poly div = divergence(cv, fam);
  const bool conserved = div.is_zero();
  const bool trivial = conserved && is_trivial(cv, fam);
  json j = vector_to_json(cv);
  j["family"] = fam.label;
  j["generator"] = print_generator(gen);
  j["phi"] = phi_src;
  j["divergence_zero"] = conserved;
  if (!conserved) j["divergence"] = residual_summary(div, 10);
  j["trivial"] = trivial;
  j["verdict"] = conserved ? (trivial ? "conserved-trivial" : "conserved") : "not-conserved";
  emit(g, j, [&](std::ostream& os) {
    os << "C1 = " << print_poly(cv.c[0]) << "\nC2 = " << print_poly(cv.c[1]) << "\nC3 = " << print_poly(cv.c[2]) << "\n";
    os << "verdict: " << j["verdict"].get<std::string>() << "\n";
    if (!conserved) os << "divergence (" << div.size() << " terms): " << print_poly(div) << "\n";
  });
  return conserved ? kPass : kFail;
}

// Input documents: a conserved-vector case (with "vectors"), or a list of
// expressions claimed to vanish on solutions of a family ("zero").
int cmd_verify(const Globals& g, const std::string& path, const SuiteOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  const json doc = json::parse(in);
  CheckResult res;
  if (doc.contains("vectors")) {
    res = replay_conservation({load_conservation_case(doc)}, opts);
  } else if (doc.contains("zero")) {
    const ParseContext ctx = context_from_json(doc);
    const PDEFamily fam = doc.at("family").is_string() ? family_of(doc.at("family").get<std::string>())
                                                       : family_from_json(doc.at("family"), ctx);
    json entries = json::array();
    for (const auto& e : doc.at("zero")) {
      const Poly expr = poly_of(e.get<std::string>(), ctx);
      const Poly reduced = reduce_with_constraints(expr, fam, {});
      json ej{{"expression", e}, {"zero", reduced.is_zero()}};
      bool ok = reduced.is_zero();
      if (!ok) ej["residual"] = residual_summary(reduced, 10);
      if (opts.numeric) {
        NumericAssignment base;
        for (const auto& a : fam.assumptions)
          if (a.sign == "positive") base.positive.insert(a.param);
        const auto s = spot_check_zero(reduced, opts.trials, opts.tol, opts.seed, base);
        ej["numeric"] = {{"pass", s.pass}, {"trials", s.trials}, {"singular", s.singular},
                         {"max_relative", s.max_relative}};
        ok = ok && s.pass;
      }
      ej["pass"] = ok;
      res.pass = res.pass && ok;
      entries.push_back(ej);
    }
    res.report = {{"family", fam.label}, {"entries", entries}, {"pass", res.pass}};
  } else {
    throw DomainError(path + ": expected a \"vectors\" or \"zero\" field");
  }
  res.report["schema"] = 1;
  emit(g, res.report, [&](std::ostream& os) {
    for (const auto& e : res.report.at("entries")) {
      os << (e.at("pass").get<bool>() ? "PASS " : "FAIL ");
      if (e.contains("vector"))
        os << e.at("case").get<std::string>() << " " << e.at("vector").get<std::string>() << ": "
           << e.at("verdict").get<std::string>() << "\n";
      else
        os << e.at("expression").get<std::string>() << "\n";
    }
  });
  return res.pass ? kPass : kFail;
}

int cmd_table1(const Globals& g) {
  const auto res = replay_table1();
  emit(g, res.report, [&](std::ostream& os) {
    for (const auto& e : res.report.at("entries")) {
      os << (e.at("pass").get<bool>() ? "PASS " : "FAIL ") << "row " << e.at("row").get<int>() << " "
         << e.at("generator").get<std::string>() << ": " << e.at("text").get<std::string>();
      if (e.contains("diagnosis"))
        os << "  [misprint: " << e["diagnosis"]["suspect"].get<std::string>() << " -> "
           << e["diagnosis"]["solved_value"].get<std::string>() << "]";
      os << "\n";
    }
    os << res.report.at("holds").get<int>() << "/" << res.report.at("checks").get<int>() << " generators hold, "
       << res.report.at("typos_diagnosed").get<int>() << " misprints diagnosed\n";
  });
  return res.pass ? kPass : kFail;
}

int cmd_paper_suite(const Globals& g, const SuiteOptions& opts, const std::string& output) {
  const auto res = paper_suite(opts);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw DomainError("cannot write " + output);
    out << res.report.dump(1) << "\n";
  }
  emit(g, res.report, [&](std::ostream& os) {
    for (const auto& [name, ok] : res.report.at("summary").items())
      if (name != "pass") os << (ok.get<bool>() ? "PASS " : "FAIL ") << name << "\n";
  });
  return res.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie symmetries, self-adjointness and conservation laws for the generalized KS family"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--size-limit", g.size_limit, "maximum terms per expression (overrides GKSYM_SIZE_LIMIT)");
  app.add_option("--threads", g.threads, "worker threads (overrides GKSYM_THREADS)");
  app.add_option("--golden-dir", g.golden_dir, "reference data directory (overrides GKSYM_GOLDEN_DIR)");

  std::string family = "generic", gen, phi, mode, expect, input, output;
  std::vector<std::string> functions, constraints;
  int order = 4;
  SuiteOptions opts;
  auto numeric_flags = [&](CLI::App* c) {
    c->add_flag("--numeric", opts.numeric, "add floating-point spot checks");
    c->add_option("--seed", opts.seed, "random seed");
    c->add_option("--trials", opts.trials, "spot-check trials")->check(CLI::PositiveNumber);
    c->add_option("--tol", opts.tol, "relative tolerance")->check(CLI::PositiveNumber);
  };

  auto* prolong_cmd = app.add_subcommand("prolong", "prolongation coefficients of a generator");
  prolong_cmd->add_option("GEN", gen, "generator, e.g. \"x*d_y - y*d_x\"")->required();
  prolong_cmd->add_option("--order", order, "highest jet order")->check(CLI::Range(1, 6));

  auto* detsys_cmd = app.add_subcommand("detsys", "determining equations of a family");
  detsys_cmd->add_option("--family", family, "family spec");

  auto* check_cmd = app.add_subcommand("check-sym", "test the symmetry condition");
  check_cmd->add_option("GEN", gen, "generator")->required();
  check_cmd->add_option("--family", family, "family spec")->required();

  auto* adjoint_cmd = app.add_subcommand("adjoint", "adjoint equation");
  adjoint_cmd->add_option("--family", family, "family spec");

  auto* sa_cmd = app.add_subcommand("selfadjoint", "self-adjointness classification");
  sa_cmd->add_option("--mode", mode, "strict, quasi or nonlinear")
      ->required()
      ->check(CLI::IsMember({"strict", "quasi", "nonlinear"}));
  sa_cmd->add_option("--family", family, "family spec");
  sa_cmd->add_option("--expect", expect, "expected verdict; exit 1 when it differs");

  auto* cl_cmd = app.add_subcommand("conslaw", "conserved vector of a symmetry");
  cl_cmd->add_option("GEN", gen, "generator")->required();
  cl_cmd->add_option("--family", family, "family spec")->required();
  cl_cmd->add_option("--phi", phi, "weight of the nonlinear self-adjoint substitution");
  cl_cmd->add_option("--function", functions, "declare NAME:args, e.g. F1:x,y,t");
  cl_cmd->add_option("--constraint", constraints, "'NODE = EXPR' rewrite for an unknown function in the weight");

  auto* verify_cmd = app.add_subcommand("verify", "check the claims in a JSON file");
  verify_cmd->add_option("--input", input, "input file")->required();
  numeric_flags(verify_cmd);

  auto* table_cmd = app.add_subcommand("table1", "replay the classification table");

  auto* suite_cmd = app.add_subcommand("paper-suite", "replay every reference result");
  suite_cmd->add_option("--output", output, "also write the JSON report here");
  numeric_flags(suite_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    load_environment_overrides();
    if (g.size_limit > 0) set_size_limit(g.size_limit);
    if (g.threads > 0) set_thread_count(g.threads);
    if (!g.golden_dir.empty()) set_golden_dir(g.golden_dir);
    if (*prolong_cmd) return cmd_prolong(g, gen, order);
    if (*detsys_cmd) return cmd_detsys(g, family);
    if (*check_cmd) return cmd_check_sym(g, gen, family);
    if (*adjoint_cmd) return cmd_adjoint(g, family);
    if (*sa_cmd) return cmd_selfadjoint(g, mode, family, expect);
    if (*cl_cmd) return cmd_conslaw(g, gen, family, phi, functions, constraints);
    if (*verify_cmd) return cmd_verify(g, input, opts);
    if (*table_cmd) return cmd_table1(g);
    if (*suite_cmd) return cmd_paper_suite(g, opts, output);
  } catch (const ParseError& e) {
    std::cerr << format_parse_error(last_source, e) << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

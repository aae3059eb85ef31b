#include "gksym/golden.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>

namespace gksym {

namespace {

std::mutex dir_mutex;
std::string dir_override;

std::vector<Atom> formal_atoms(const std::vector<std::string>& names) {
  std::vector<Atom> out;
  for (const auto& n : names) {
    if (n == "x") out.push_back(indep_atom(X));
    else if (n == "y") out.push_back(indep_atom(Y));
    else if (n == "t") out.push_back(indep_atom(T));
    else if (n == "u") out.push_back(jet_atom(U, {}));
    else throw DomainError("unknown formal argument '" + n + "'");
  }
  return out;
}

std::string function_of(const Poly& node) {
  if (node.size() != 1 || node.terms()[0].mono.factors.size() != 1) throw DomainError("expected a single function node");
  const auto& a = node.terms()[0].mono.factors[0].atom;
  if (a->kind != AtomKind::Func) throw DomainError("expected a function node");
  return a->name;
}

std::vector<ConstraintRule> constraints_from_json(const nlohmann::json& arr, const ParseContext& ctx) {
  std::vector<ConstraintRule> out;
  for (const auto& c : arr) {
    Poly eq = parse_poly(c.at("equation").get<std::string>(), ctx);
    Poly lead = parse_poly(c.at("solve_for").get<std::string>(), ctx);
    const std::string name = function_of(lead);
    out.push_back(solve_constraint(eq, name, formal_atoms(ctx.functions.at(name)), &lead));
  }
  return out;
}

TableGenerator table_generator(const nlohmann::json& j) {
  TableGenerator g;
  g.label = j.at("label");
  g.text = j.at("generator");
  g.generator = parse_generator(g.text);
  g.generator.label = g.label;
  g.expect_typo = j.value("expected", "") == "typo";
  g.suspect = j.value("suspect", "");
  g.corrected = j.value("corrected", "");
  g.justification = j.value("justification", "");
  return g;
}

}  // namespace

std::string golden_dir() {
  {
    std::lock_guard<std::mutex> lock(dir_mutex);
    if (!dir_override.empty()) return dir_override;
  }
  if (const char* env = std::getenv("GKSYM_GOLDEN_DIR"); env && *env) return env;
#ifdef GKSYM_GOLDEN_DIR
  return GKSYM_GOLDEN_DIR;
#else
  return "golden";
#endif
}

void set_golden_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lock(dir_mutex);
  dir_override = dir;
}

nlohmann::json load_golden(const std::string& relative_path) {
  const auto path = std::filesystem::path(golden_dir()) / relative_path;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open golden file " + path.string());
  return nlohmann::json::parse(in);
}

ParseContext context_from_json(const nlohmann::json& doc, ParseContext base) {
  if (doc.contains("functions"))
    for (const auto& [name, args] : doc.at("functions").items()) base.declare_function(name, args);
  if (doc.contains("macros"))
    for (const auto& [name, text] : doc.at("macros").items()) base.macros[name] = text;
  return base;
}

TableData load_table1() {
  const auto doc = load_golden("table1.json");
  TableData data;
  for (const auto& g : doc.at("base")) data.base.push_back(table_generator(g));
  for (const auto& r : doc.at("rows")) {
    TableRow row;
    row.row = r.at("row");
    row.family = family_from_json(r.at("family"));
    row.family.label = "table1:" + std::to_string(row.row);
    if (r.contains("side_conditions"))
      for (const auto& s : r.at("side_conditions")) row.family.side_conditions.push_back(s);
    for (const auto& g : r.at("generators")) row.generators.push_back(table_generator(g));
    data.rows.push_back(std::move(row));
  }
  return data;
}

std::vector<ListedEquation> load_appendix_a() {
  const auto doc = load_golden("appendix_a.json");
  std::vector<ListedEquation> out;
  for (const auto& e : doc.at("equations")) {
    ListedEquation le;
    le.index = e.at("index");
    le.line = e.at("line");
    le.text = e.at("equation");
    le.equation = parse_poly(le.text);
    out.push_back(std::move(le));
  }
  return out;
}

AnsatzData load_ansatz_residual() {
  const auto doc = load_golden("ansatz_residual.json");
  AnsatzData a;
  const auto& g = doc.at("ansatz");
  a.ansatz.label = "ansatz";
  a.ansatz.xi = {parse_poly(g.at("xi1").get<std::string>()), parse_poly(g.at("xi2").get<std::string>()),
                 parse_poly(g.at("xi3").get<std::string>())};
  a.ansatz.eta = parse_poly(g.at("eta").get<std::string>());
  a.split = formal_atoms(doc.at("split"));
  a.stated_count = doc.at("stated_count");
  for (const auto& e : doc.at("equations")) a.equations.push_back(parse_poly(e.get<std::string>()));
  return a;
}

ConservationCase load_conservation_case(const nlohmann::json& doc) {
  const ParseContext ctx = context_from_json(doc);
  ConservationCase cc;
  cc.id = doc.at("id");
  cc.title = doc.value("title", "");
  cc.family = family_from_json(doc.at("family"), ctx);
  cc.family.label = "s5:" + cc.id;
  cc.phi = parse_poly(doc.at("phi").get<std::string>(), ctx);
  std::vector<ConstraintRule> aux;
  if (doc.contains("phi_constraints")) aux = constraints_from_json(doc.at("phi_constraints"), ctx);
  for (const auto& v : doc.at("vectors")) {
    VectorEntry e;
    e.label = v.at("label");
    e.symmetry_text = v.at("symmetry");
    e.symmetry = parse_generator(e.symmetry_text, ctx);
    e.symmetry.label = e.symmetry_text;
    e.family = cc.family;
    if (v.contains("family")) {
      e.family = family_from_json(v.at("family"), ctx);
      e.family.label = cc.family.label + ":" + e.label;
    }
    e.aux = v.contains("phi_constraints") ? constraints_from_json(v.at("phi_constraints"), ctx) : aux;
    if (v.contains("C1")) {
      ConservedVector cv;
      cv.source = "transcribed";
      cv.aux = e.aux;
      const char* keys[] = {"C1", "C2", "C3"};
      for (int i = 0; i < 3; ++i) cv.c[i] = parse_poly(v.at(keys[i]).get<std::string>(), ctx);
      e.transcribed = cv;
    }
    if (v.contains("variants"))
      for (const auto& var : v.at("variants")) {
        VectorVariant vv;
        vv.name = var.at("name");
        const char* keys[] = {"C1", "C2", "C3"};
        for (int i = 0; i < 3; ++i)
          if (var.contains(keys[i])) vv.c[i] = parse_poly(var.at(keys[i]).get<std::string>(), ctx);
        e.variants.push_back(std::move(vv));
      }
    e.nontrivial_if = v.value("nontrivial_if", "");
    e.expect_trivial = v.value("expect_trivial", false);
    e.expected = v.value("expected", e.transcribed ? "verified" : (e.expect_trivial ? "trivial" : "nontrivial"));
    e.justification = v.value("justification", "");
    cc.vectors.push_back(std::move(e));
  }
  return cc;
}

std::vector<ConservationCase> load_section5() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(golden_dir()) / "section5"))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ConservationCase> out;
  for (const auto& f : files) out.push_back(load_conservation_case(load_golden("section5/" + f.filename().string())));
  return out;
}

nlohmann::json load_theorems() { return load_golden("theorems3.json"); }

PDEFamily resolve_family(const std::string& spec) {
  auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
  if (starts("table1:")) {
    const int row = std::stoi(spec.substr(7));
    for (const auto& r : load_table1().rows)
      if (r.row == row) return r.family;
    throw DomainError("no table row " + spec.substr(7));
  }
  if (spec == "sa:quasi") {
    const auto doc = load_theorems().at("quasi").at("solution").at("family");
    PDEFamily fam = family_from_json(doc);
    fam.label = spec;
    return fam;
  }
  if (starts("sa:case")) {
    const int k = std::stoi(spec.substr(7));
    const auto doc = load_theorems();
    for (const auto& c : doc.at("nonlinear").at("cases"))
      if (c.at("case") == k) {
        PDEFamily fam = family_from_json(c.at("family"), context_from_json(c));
        fam.label = spec;
        for (const auto& s : c.at("side_conditions")) fam.side_conditions.push_back(s);
        return fam;
      }
    throw DomainError("no nonlinear case " + spec.substr(7));
  }
  if (starts("s5:")) {
    for (const auto& c : load_section5())
      if (c.id == spec.substr(3)) return c.family;
    throw DomainError("no conserved-vector case " + spec.substr(3));
  }
  return parse_family_inline(spec);
}

}  // namespace gksym

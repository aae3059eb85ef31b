#pragma once

// Loaders for the reference data shipped under golden/.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gksym/conservation.hpp"

namespace gksym {

// Directory holding the reference data: GKSYM_GOLDEN_DIR when set, else the
// source-tree default baked in at build time. set_golden_dir wins over both.
std::string golden_dir();
void set_golden_dir(const std::string& dir);
nlohmann::json load_golden(const std::string& relative_path);

// Standard context extended by a document's "functions" and "macros" fields.
ParseContext context_from_json(const nlohmann::json& doc, ParseContext base = ParseContext::standard());

// ---- table of classified families ------------------------------------------

struct TableGenerator {
  std::string label;
  std::string text;
  Generator generator;
  bool expect_typo = false;
  std::string suspect;    // parameter replaced by a free unknown for diagnosis
  std::string corrected;  // generator text believed to be intended
  std::string justification;
};

struct TableRow {
  int row = 0;
  PDEFamily family;
  std::vector<TableGenerator> generators;  // row-specific, without the base three
};

struct TableData {
  std::vector<TableGenerator> base;
  std::vector<TableRow> rows;
};

TableData load_table1();

// ---- listed determining equations -------------------------------------------

struct ListedEquation {
  int index = 0;
  int line = 0;
  std::string text;
  Poly equation;
};

std::vector<ListedEquation> load_appendix_a();

struct AnsatzData {
  Generator ansatz;
  std::vector<Atom> split;
  int stated_count = 0;
  std::vector<Poly> equations;
};

AnsatzData load_ansatz_residual();

// ---- conserved vectors ------------------------------------------------------

struct VectorVariant {
  std::string name;
  std::array<std::optional<Poly>, 3> c;  // replaced components only
};

struct VectorEntry {
  std::string label;
  std::string symmetry_text;
  Generator symmetry;
  PDEFamily family;                   // the case family unless overridden
  std::vector<ConstraintRule> aux;    // constraints on the weight's unknown function
  std::optional<ConservedVector> transcribed;
  std::vector<VectorVariant> variants;
  std::string nontrivial_if;
  bool expect_trivial = false;
  std::string expected;  // "verified", "verified-with-correction", "flagged", "trivial" or "nontrivial"
  std::string justification;
};

struct ConservationCase {
  std::string id;
  std::string title;
  PDEFamily family;
  Poly phi;
  std::vector<VectorEntry> vectors;
};

ConservationCase load_conservation_case(const nlohmann::json& doc);
std::vector<ConservationCase> load_section5();

// ---- theorem transcriptions -------------------------------------------------

nlohmann::json load_theorems();

// Family spec resolution: "generic", inline "f=...;g=...", "table1:N",
// "sa:quasi", "sa:caseK" (K = 1..5) and "s5:ID" (a conserved-vector case).
PDEFamily resolve_family(const std::string& spec);

}  // namespace gksym

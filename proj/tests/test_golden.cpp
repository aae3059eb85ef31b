#include <doctest.h>

#include "gksym/suite.hpp"

using namespace gksym;

TEST_CASE("golden data loads") {
  const auto table = load_table1();
  CHECK(table.rows.size() == 18);
  CHECK(table.base.size() == 3);
  CHECK(load_appendix_a().size() == 201);
  CHECK(load_section5().size() == 6);
  CHECK(load_ansatz_residual().stated_count == 21);
}

TEST_CASE("family specs resolve") {
  CHECK(resolve_family("table1:5").label == "table1:5");
  CHECK(resolve_family("sa:case3").label == "sa:case3");
  CHECK(resolve_family("s5:subcase2_2").label == "s5:subcase2_2");
  CHECK_THROWS_AS(resolve_family("table1:99"), DomainError);
}

TEST_CASE("table replay") {
  const auto r = replay_table1();
  CHECK(r.pass);
  CHECK(r.report.at("holds").get<int>() == 95);
  CHECK(r.report.at("typos_diagnosed").get<int>() == 3);
}

TEST_CASE("listed determining equations") {
  const auto r = replay_appendix_a();
  CHECK(r.pass);
  CHECK(r.report.at("exact").get<int>() == 199);
  CHECK(r.report.at("mismatch").get<int>() == 2);
}

TEST_CASE("ansatz residual system") {
  const auto r = replay_ansatz_residual();
  CHECK(r.pass);
  CHECK(r.report.at("computed").get<int>() == 20);
}

TEST_CASE("self-adjointness theorems") { CHECK(check_theorems().pass); }

TEST_CASE("conserved-vector replay") {
  const auto r = replay_section5();
  CHECK(r.pass);
  CHECK(r.report.at("formula_divergence_zero").get<int>() == r.report.at("vectors").get<int>());
}

TEST_CASE("the consolidated report is deterministic") {
  const auto a = paper_suite().report.dump();
  const auto b = paper_suite().report.dump();
  CHECK(a == b);
}

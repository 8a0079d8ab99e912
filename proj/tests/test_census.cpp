#include <doctest.h>

#include <sstream>

#include "graycensus/census.hpp"

using namespace graycensus;

namespace {

std::vector<std::string> table_cells(const std::string& line) {
  // Columns are separated by at least two spaces.
  std::vector<std::string> out;
  std::string cur;
  int spaces = 0;
  for (char c : line) {
    if (c == ' ') {
      ++spaces;
      continue;
    }
    if (spaces >= 2 && !cur.empty()) {
      out.push_back(cur);
      cur.clear();
    } else if (spaces == 1) {
      cur.push_back(' ');
    }
    spaces = 0;
    cur.push_back(c);
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

TEST_SUITE("census") {
  TEST_CASE("n = 4 report") {
    const auto r = run_census(4);
    CHECK(r.h.value == BigCount(1344));
    CHECK(r.oh.value == BigCount(2688));
    CHECK(r.eh.value == BigCount(112));
    CHECK(r.m.value == BigCount(272));
    CHECK(r.m2.value == BigCount(73984));
    CHECK(r.aut.value == BigCount(9));
    CHECK(r.weight.value == BigCount(4));
    CHECK(r.h_factors.str() == "2^6 * 3 * 7");
    CHECK(r.odd_primes == 1);
    for (const auto* f : {&r.h, &r.oh, &r.eh, &r.m, &r.m2, &r.aut, &r.weight}) {
      CHECK(f->source == Provenance::computed);
    }
    for (const auto& c : r.checks) {
      INFO(c.name);
      CHECK(c.ok);
    }
    CHECK(r.ok());
  }

  TEST_CASE("n = 2 report") {
    const auto r = run_census(2);
    CHECK(r.h.value == BigCount(1));
    CHECK(r.m2.value == BigCount(4));
    CHECK(r.aut.value == BigCount(1));
    CHECK(r.weight.value == BigCount(1));
    CHECK_FALSE(r.odd_primes.has_value());
    CHECK(r.ok());
  }

  TEST_CASE("consistency checks catch a broken report") {
    auto r = run_census(3);
    REQUIRE(r.ok());
    r.oh.value += 1;
    r.checks = consistency_checks(r);
    CHECK_FALSE(r.ok());
    r = run_census(3);
    r.aut.value = 7;
    r.checks = consistency_checks(r);
    CHECK_FALSE(r.ok());
  }

  TEST_CASE("json emission") {
    const auto r = run_census(3);
    const auto json = emit(r, ReportFormat::json);
    CHECK(json.find("\"H\":\"6\"") != std::string::npos);
    CHECK(json.find("\"provenance\":{\"H\":\"computed\"") != std::string::npos);
    CHECK(emit(r, ReportFormat::json) == json);
    CHECK(emit(r, ReportFormat::csv) == emit(r, ReportFormat::csv));
    CHECK(emit(r, ReportFormat::table) == emit(r, ReportFormat::table));
  }

  TEST_CASE("every field has a provenance tag in every format") {
    const auto r = run_census(2);
    const auto csv = emit(r, ReportFormat::csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,field,value,provenance");
    while (std::getline(in, line)) {
      const bool tagged = line.ends_with(",computed") || line.ends_with(",paper-reported");
      INFO(line);
      CHECK(tagged);
    }
  }

  TEST_CASE("text table reproduces the published rows") {
    std::vector<CensusReport> reports;
    for (int n = 2; n <= 4; ++n) reports.push_back(run_census(n));
    const auto table = emit(reports, ReportFormat::table);
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);
    CHECK(table_cells(line) == std::vector<std::string>{"n", "H_n", "M_n^2", "M_n^2 (4 s.f.)", "Aut_n", "Weight_n"});
    for (int n = 2; n <= 4; ++n) {
      REQUIRE(std::getline(in, line));
      const auto cells = table_cells(line);
      const auto& pub = published_row(n);
      REQUIRE(cells.size() == 6);
      CHECK(cells[0] == std::to_string(n));
      CHECK(cells[1] == BigCount::from_string(pub.h).to_grouped_string());
      CHECK(cells[2] == BigCount::from_string(pub.m2).to_grouped_string());
      CHECK(cells[4] == pub.aut);
      CHECK(cells[5] == pub.weight);
    }
    CHECK_FALSE(std::getline(in, line));
  }

  TEST_CASE("rounded table cells") {
    CHECK(table_cell_rounded(73984) == "73,984");
    CHECK(table_cell_rounded(347138963225ull) == "3.471 * 10^11");
    CHECK(table_cell_rounded(BigCount::from_string("266749070875738835911704576")) == "2.667 * 10^26");
  }

  TEST_CASE("format names") {
    CHECK(parse_report_format("json") == ReportFormat::json);
    CHECK(parse_report_format("table") == ReportFormat::table);
    CHECK_THROWS_AS(parse_report_format("xml"), std::invalid_argument);
    CHECK_THROWS_AS(run_census(7), std::out_of_range);
    CHECK_THROWS_AS(published_row(7), std::out_of_range);
  }
}

TEST_SUITE("census_slow") {
  TEST_CASE("n = 6 without extended runs marks stored values") {
    const auto r = run_census(6);
    CHECK(r.h.source == Provenance::paper_reported);
    CHECK(r.aut.source == Provenance::paper_reported);
    CHECK(r.weight.source == Provenance::paper_reported);
    CHECK(r.h.value == BigCount::from_string("14754666508334433250560"));
    CHECK(r.aut.value == BigCount::from_string("147365405634413085"));
    CHECK(r.weight.value == BigCount(550));
    CHECK(r.m.source == Provenance::computed);
    CHECK(r.m.value == BigCount::from_string("16332454526976"));
    CHECK(r.odd_primes == 3);
    CHECK(r.ok());
    const auto json = emit(r, ReportFormat::json);
    CHECK(json.find("\"H\":\"paper-reported\"") != std::string::npos);
    CHECK(json.find("\"Aut\":\"paper-reported\"") != std::string::npos);
    CHECK(emit(r, ReportFormat::table).find("* paper-reported, not reproduced") != std::string::npos);
  }
}

#include <doctest.h>

#include <set>

#include "cmsz/report.hpp"

using namespace cmsz;

TEST_CASE("suite commands") {
  const auto& c = suite_commands();
  CHECK(std::set<std::string>(c.begin(), c.end()).size() == c.size());
  CHECK(std::set<std::string>(c.begin(), c.end()).count("appendix-search") == 1);
  CHECK_THROWS_AS(run_suites("no-such-suite", {}), std::invalid_argument);
}

TEST_CASE("appendix suite report") {
  const RunConfig cfg;
  const auto suites = run_suites("appendix-search", cfg);
  REQUIRE(suites.size() == 1);
  CHECK(suites[0].passed());
  CHECK(all_passed(suites));
  const Json j = report_json(suites, cfg);
  CHECK(j.contains("suites"));
  CHECK(j.contains("config"));
  CHECK_FALSE(j["config"].contains("threads"));
  CHECK(j["suites"][0]["status"] == "pass");
  std::set<std::string> ids;
  for (const auto& c : suites[0].claims) {
    CHECK(ids.insert(c.id).second);
    CHECK_FALSE(c.citation.empty());
  }
  CHECK(report_text(suites).find("PASS") != std::string::npos);
}

TEST_CASE("report-only claims do not fail a suite") {
  Suite s{"x", {{"a", "a", Status::kPass, {}}, {"b", "b", Status::kReportOnly, {}}}};
  CHECK(s.passed());
  s.claims.push_back({"c", "c", Status::kFail, {}});
  CHECK_FALSE(s.passed());
  CHECK(status_name(Status::kReportOnly) != status_name(Status::kFail));
}

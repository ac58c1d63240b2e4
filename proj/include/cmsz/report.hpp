#pragma once

// Verification suites: each suite runs module checks and records one claim
// per statement, with a small JSON witness.

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cmsz {

using Json = nlohmann::ordered_json;

enum class Status { kPass, kFail, kReportOnly };

std::string status_name(Status s);

struct Claim {
  std::string id;
  std::string citation;  // the statement being checked
  Status status = Status::kFail;
  Json witness;
};

struct Suite {
  std::string name;
  std::vector<Claim> claims;
  bool passed() const;
};

struct RunConfig {
  unsigned padic_precision = 64;
  unsigned ball_radius = 2;
  unsigned threads = 0;  // 0: all hardware threads
  std::string dump_groups;  // directory for group dumps; empty for none
};

inline constexpr const char* kToolkitVersion = "1.0.0";

/// Subcommand names in display order (without verify-all).
const std::vector<std::string>& suite_commands();

/// Runs the suites for `command` (a suite command or "verify-all"); throws
/// std::invalid_argument for anything else. Shared intermediate results
/// (the finite groups) are computed once per call.
std::vector<Suite> run_suites(const std::string& command, const RunConfig& cfg);

/// {"suites": [...], "config": {...}}. The thread count is not echoed, so
/// the document does not depend on it.
Json report_json(const std::vector<Suite>& suites, const RunConfig& cfg);
std::string report_text(const std::vector<Suite>& suites);

/// True iff no claim other than report-only ones failed.
bool all_passed(const std::vector<Suite>& suites);

}  // namespace cmsz

#pragma once

// Named verification suites. Each suite runs a fixed list of checks for one
// q and records expected and computed values. Asserted checks decide the
// suite's verdict; informational ones are reported only.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "galois/cache.hpp"

namespace galois {

inline constexpr int kSchemaVersion = 1;

struct Check {
  std::string claim_id;
  std::string anchor;  // the statement being checked
  nlohmann::ordered_json expected;
  nlohmann::ordered_json computed;
  bool pass = false;
  bool informational = false;
  std::string status = "ok";  // "skipped" when over budget, "error" on an unexpected exception
};

struct SuiteReport {
  std::string suite;
  std::uint32_t q = 0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  bool pass = true;
  std::int64_t runtime_ms = 0;
  std::size_t cache_hits = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool heavy = false;
  CodeCache* cache = nullptr;  // required
};

/// Suite names accepted by run_suites, without "all".
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);
/// Largest budget-safe q range for a suite.
std::pair<std::uint32_t, std::uint32_t> default_q_range(const std::string& suite);

/// Runs one suite at one q. Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint32_t q, const SuiteOptions& opts);

/// name may be "all". Prime powers in [lo, hi]; without a range each suite
/// uses its default. Reports are ordered by suite, then q.
std::vector<SuiteReport> run_suites(const std::string& name,
                                    std::optional<std::pair<std::uint32_t, std::uint32_t>> range,
                                    const SuiteOptions& opts);

bool all_pass(const std::vector<SuiteReport>& reports);

nlohmann::ordered_json report_to_json(const SuiteReport& r);
/// JSON array of reports, two-space indented, trailing newline.
std::string reports_to_json(const std::vector<SuiteReport>& reports);
/// One row per check.
std::string reports_to_csv(const std::vector<SuiteReport>& reports);

}  // namespace galois

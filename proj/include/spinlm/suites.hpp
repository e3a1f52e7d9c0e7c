#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinlm/bruhat.hpp"

namespace spinlm {

enum class Status { pass, fail, skipped };
std::string status_str(Status s);

struct VerificationRecord {
  std::string suite;
  nlohmann::ordered_json params;
  std::string claim;
  nlohmann::ordered_json expected;
  nlohmann::ordered_json computed;
  Status status = Status::skipped;
  double elapsed_ms = 0;
  nlohmann::ordered_json witness;  // symmetric differences, failing clauses

  std::string sort_key() const;
};

enum class OutputFormat { json, csv, text };

struct SuiteConfig {
  std::vector<int> n_values{4};
  // nullopt: suite default; otherwise explicit sets, or every nonempty subset when all_index_sets.
  std::optional<std::vector<std::vector<int>>> index_sets;
  bool all_index_sets = false;
  std::vector<Sign> signs{Sign::plus, Sign::minus};
  std::vector<std::string> suites;
  int jobs = 1;
  bool allow_large = false;
  bool mutate_adm = false;  // test hook: corrupts Adm before comparison
  bool timings = false;
  OutputFormat format = OutputFormat::json;
};

const std::vector<std::string>& suite_names();
// Throws Error with a usage message when the config is out of range.
void validate_config(const SuiteConfig& cfg);
// Parses "0,2;1;3", "all", or "vertices".
void parse_index_sets(const std::string& text, SuiteConfig& cfg);

std::vector<VerificationRecord> run_suites(const SuiteConfig& cfg);

nlohmann::ordered_json report_json(const std::vector<VerificationRecord>& records, const SuiteConfig& cfg);
std::string report_csv(const std::vector<VerificationRecord>& records, const SuiteConfig& cfg);
std::string report_text(const std::vector<VerificationRecord>& records, const SuiteConfig& cfg, bool color);
bool all_passed(const std::vector<VerificationRecord>& records);

std::string index_set_str(const std::vector<int>& indices);

}  // namespace spinlm

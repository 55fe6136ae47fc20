#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convfix/serialize.hpp"

namespace convfix {

struct Tolerances {
  double rank_tol = 1e-10;
  double idem_tol = 1e-9;
  double z_tol = 1e-9;
  double cesaro_eps = 1e-9;
};

struct Limits {
  long long n_max = 4096;
  int window = 64;
  long long support_cap = 20000;
};

struct ScenarioConfig {
  std::vector<std::string> groups;  // group specs
  int draws_per_group = 200;
  std::uint64_t seed = 1;
  Tolerances tolerances;
  Limits limits;
  std::vector<std::string> suites;  // subset of all_suite_names()

  CesaroOptions cesaro_options() const {
    return CesaroOptions{tolerances.cesaro_eps, limits.n_max, limits.window, limits.support_cap};
  }
};

/// Z2, Z4, Z6, Klein, Z2xZ3, D4, Q8, S3, S4.
const std::vector<std::string>& builtin_group_specs();

/// measure, fixedpoint, ideals, lp, lattice, dual, abelian_prop, mukherjea_dual.
const std::vector<std::string>& all_suite_names();

ScenarioConfig default_config();

/// Single JSON document; unknown suite names and malformed fields are
/// rejected with field diagnostics (ConfigError).
ScenarioConfig parse_scenario_config(const std::string& json_text);
std::string config_to_json(const ScenarioConfig& config);

enum class Verdict { Pass, Fail, Undecided };

std::string verdict_name(Verdict v);

struct ReportRecord {
  std::string suite;
  std::string case_id;
  std::string group;      // spec string, or "Z"
  std::string seed_text;  // decimal seed for draws, empty for fixtures
  std::optional<int> dim_fix;
  std::optional<bool> has_char;
  std::uint64_t digest = 0;
  Verdict verdict = Verdict::Pass;
  std::vector<std::pair<std::string, double>> residuals;
  std::string artifacts_json;  // embedded replay inputs; always set on fail

  double max_residual() const;
  std::string to_jsonl() const;
};

/// Runs the selected suites. Cases fan out over (suite, group) tasks on a
/// bounded worker pool; records are merged in (suite, case_id) order, so
/// output bytes are independent of scheduling.
std::vector<ReportRecord> run_suites(const ScenarioConfig& config);

void write_jsonl(const std::vector<ReportRecord>& records, std::ostream& out);
void write_csv(const std::vector<ReportRecord>& records, std::ostream& out);

struct Totals {
  int pass = 0;
  int fail = 0;
  int undecided = 0;
};
Totals totals_of(const std::vector<ReportRecord>& records);
void print_totals(const std::vector<ReportRecord>& records, std::ostream& out);

/// Re-runs one recorded case verbosely from its embedded artifacts:
/// the measure, |omega|, extracted character or conflict witness, Cesaro
/// residuals, subspace dimensions and principal angles.
std::string explain_record(const std::string& record_json);

/// Find a record line by case id inside a JSON-lines report.
std::optional<std::string> find_record_line(const std::string& jsonl_text,
                                            const std::string& case_id);

}  // namespace convfix

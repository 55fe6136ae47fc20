#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "convfix/suites.hpp"

namespace convfix {

const std::vector<std::string>& builtin_group_specs() {
  static const std::vector<std::string> specs = {
      "cyclic:2",
      "cyclic:4",
      "cyclic:6",
      "product(cyclic:2,cyclic:2)",
      "product(cyclic:2,cyclic:3)",
      "dihedral:4",
      "quaternion8",
      "symmetric:3",
      "symmetric:4",
  };
  return specs;
}

const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> names = {
      "measure", "fixedpoint", "ideals", "lp", "lattice", "dual", "abelian_prop",
      "mukherjea_dual",
  };
  return names;
}

ScenarioConfig default_config() {
  ScenarioConfig config;
  config.groups = builtin_group_specs();
  config.suites = all_suite_names();
  return config;
}

namespace {

double positive_field(const nlohmann::json& j, const char* section, const char* field,
                      double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_number())
    throw ConfigError(std::string("config field ") + section + "." + field + " must be a number");
  const double v = j.at(field).get<double>();
  if (v <= 0.0)
    throw ConfigError(std::string("config field ") + section + "." + field + " must be positive");
  return v;
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ScenarioConfig config = default_config();

  if (j.contains("groups")) {
    if (!j.at("groups").is_array()) throw ConfigError("config field groups must be an array");
    config.groups.clear();
    for (const auto& item : j.at("groups")) {
      if (!item.is_string()) throw ConfigError("config field groups must hold spec strings");
      const std::string spec = item.get<std::string>();
      build_group(spec);  // validate now so bad specs fail at parse time
      config.groups.push_back(spec);
    }
    if (config.groups.empty()) throw ConfigError("config field groups must not be empty");
  }

  if (j.contains("draws_per_group")) {
    if (!j.at("draws_per_group").is_number_integer())
      throw ConfigError("config field draws_per_group must be an integer");
    config.draws_per_group = j.at("draws_per_group").get<int>();
    if (config.draws_per_group < 1) throw ConfigError("config field draws_per_group must be >= 1");
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw ConfigError("config field seed must be an integer");
    config.seed = j.at("seed").get<std::uint64_t>();
  }

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("config field tolerances must be an object");
    config.tolerances.rank_tol = positive_field(t, "tolerances", "rank_tol", config.tolerances.rank_tol);
    config.tolerances.idem_tol = positive_field(t, "tolerances", "idem_tol", config.tolerances.idem_tol);
    config.tolerances.z_tol = positive_field(t, "tolerances", "z_tol", config.tolerances.z_tol);
    config.tolerances.cesaro_eps =
        positive_field(t, "tolerances", "cesaro_eps", config.tolerances.cesaro_eps);
  }

  if (j.contains("limits")) {
    const auto& l = j.at("limits");
    if (!l.is_object()) throw ConfigError("config field limits must be an object");
    config.limits.n_max = static_cast<long long>(positive_field(l, "limits", "n_max",
                                                                static_cast<double>(config.limits.n_max)));
    config.limits.window = static_cast<int>(positive_field(l, "limits", "window",
                                                           static_cast<double>(config.limits.window)));
    config.limits.support_cap = static_cast<long long>(
        positive_field(l, "limits", "support_cap", static_cast<double>(config.limits.support_cap)));
  }

  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) throw ConfigError("config field suites must be an array");
    config.suites.clear();
    for (const auto& item : j.at("suites")) {
      if (!item.is_string()) throw ConfigError("config field suites must hold suite names");
      const std::string name = item.get<std::string>();
      const auto& known = all_suite_names();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ConfigError("unknown suite name '" + name + "' in config field suites");
      config.suites.push_back(name);
    }
    if (config.suites.empty()) throw ConfigError("config field suites must not be empty");
  }

  for (const auto& key : j.items()) {
    static const std::vector<std::string> known = {"groups", "draws_per_group", "seed",
                                                   "tolerances", "limits", "suites"};
    if (std::find(known.begin(), known.end(), key.key()) == known.end())
      throw ConfigError("unknown config field '" + key.key() + "'");
  }
  return config;
}

std::string config_to_json(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "{\"groups\":[";
  for (std::size_t i = 0; i < config.groups.size(); ++i) {
    if (i) out << ',';
    out << '"' << json_escape(config.groups[i]) << '"';
  }
  out << "],\"draws_per_group\":" << config.draws_per_group << ",\"seed\":" << config.seed
      << ",\"tolerances\":{\"rank_tol\":" << json_number(config.tolerances.rank_tol)
      << ",\"idem_tol\":" << json_number(config.tolerances.idem_tol)
      << ",\"z_tol\":" << json_number(config.tolerances.z_tol)
      << ",\"cesaro_eps\":" << json_number(config.tolerances.cesaro_eps)
      << "},\"limits\":{\"n_max\":" << config.limits.n_max
      << ",\"window\":" << config.limits.window
      << ",\"support_cap\":" << config.limits.support_cap << "},\"suites\":[";
  for (std::size_t i = 0; i < config.suites.size(); ++i) {
    if (i) out << ',';
    out << '"' << json_escape(config.suites[i]) << '"';
  }
  out << "]}";
  return out.str();
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undecided: return "undecided";
  }
  return "fail";
}

double ReportRecord::max_residual() const {
  double m = 0.0;
  for (const auto& [name, v] : residuals) m = std::max(m, std::abs(v));
  return m;
}

std::string ReportRecord::to_jsonl() const {
  std::ostringstream out;
  char digest_hex[24];
  std::snprintf(digest_hex, sizeof(digest_hex), "%016llx",
                static_cast<unsigned long long>(digest));
  out << "{\"suite\":\"" << json_escape(suite) << "\",\"case_id\":\"" << json_escape(case_id)
      << "\",\"group\":\"" << json_escape(group) << "\"";
  if (!seed_text.empty()) out << ",\"seed\":" << seed_text;
  if (dim_fix) out << ",\"dim_fix\":" << *dim_fix;
  if (has_char) out << ",\"has_char\":" << (*has_char ? "true" : "false");
  out << ",\"inputs_digest\":\"" << digest_hex << "\",\"verdict\":\"" << verdict_name(verdict)
      << "\",\"residuals\":{";
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (i) out << ',';
    out << '"' << json_escape(residuals[i].first) << "\":" << json_number(residuals[i].second);
  }
  out << '}';
  if (!artifacts_json.empty()) out << ",\"artifacts\":" << artifacts_json;
  out << '}';
  return out.str();
}

void write_jsonl(const std::vector<ReportRecord>& records, std::ostream& out) {
  for (const ReportRecord& r : records) out << r.to_jsonl() << '\n';
}

void write_csv(const std::vector<ReportRecord>& records, std::ostream& out) {
  out << "group,seed,dim_fix,has_char,max_residual,pass\n";
  for (const ReportRecord& r : records) {
    out << r.group << ',' << r.seed_text << ',';
    if (r.dim_fix) out << *r.dim_fix;
    out << ',';
    if (r.has_char) out << (*r.has_char ? 1 : 0);
    out << ',' << json_number(r.max_residual()) << ',' << verdict_name(r.verdict) << '\n';
  }
}

Totals totals_of(const std::vector<ReportRecord>& records) {
  Totals t;
  for (const ReportRecord& r : records) {
    if (r.verdict == Verdict::Pass) ++t.pass;
    else if (r.verdict == Verdict::Fail) ++t.fail;
    else ++t.undecided;
  }
  return t;
}

void print_totals(const std::vector<ReportRecord>& records, std::ostream& out) {
  std::vector<std::string> suites;
  for (const ReportRecord& r : records)
    if (std::find(suites.begin(), suites.end(), r.suite) == suites.end()) suites.push_back(r.suite);
  std::sort(suites.begin(), suites.end());
  for (const std::string& s : suites) {
    Totals t;
    for (const ReportRecord& r : records) {
      if (r.suite != s) continue;
      if (r.verdict == Verdict::Pass) ++t.pass;
      else if (r.verdict == Verdict::Fail) ++t.fail;
      else ++t.undecided;
    }
    out << "suite " << s << ": " << t.pass << " pass, " << t.fail << " fail, " << t.undecided
        << " undecided\n";
  }
  const Totals t = totals_of(records);
  out << "total: " << t.pass << " pass, " << t.fail << " fail, " << t.undecided
      << " undecided\n";
}

std::optional<std::string> find_record_line(const std::string& jsonl_text,
                                            const std::string& case_id) {
  std::istringstream stream(jsonl_text);
  std::string line;
  const std::string needle = "\"case_id\":\"" + case_id + "\"";
  while (std::getline(stream, line))
    if (line.find(needle) != std::string::npos) return line;
  return std::nullopt;
}

}  // namespace convfix

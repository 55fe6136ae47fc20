#include <doctest.h>

#include <sstream>

#include "convfix/suites.hpp"

using namespace convfix;

namespace {

ScenarioConfig tiny_config() {
  ScenarioConfig c = default_config();
  c.groups = {"cyclic:4", "symmetric:3"};
  c.draws_per_group = 6;
  c.seed = 3;
  c.suites = {"measure", "fixedpoint", "ideals", "lp", "dual", "abelian_prop"};
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults") {
    const ScenarioConfig c = parse_scenario_config("{}");
    CHECK(c.groups.size() == 9);
    CHECK(c.draws_per_group == 200);
    CHECK(c.suites.size() == 8);
    CHECK(c.tolerances.cesaro_eps == 1e-9);
    CHECK(c.limits.n_max == 4096);
  }

  SUBCASE("explicit fields") {
    const ScenarioConfig c = parse_scenario_config(
        R"({"groups":["cyclic:3"],"draws_per_group":7,"seed":99,
            "tolerances":{"rank_tol":1e-9},"limits":{"window":32},
            "suites":["lattice"]})");
    CHECK(c.groups == std::vector<std::string>{"cyclic:3"});
    CHECK(c.draws_per_group == 7);
    CHECK(c.seed == 99);
    CHECK(c.tolerances.rank_tol == 1e-9);
    CHECK(c.limits.window == 32);
    CHECK(c.suites == std::vector<std::string>{"lattice"});
  }

  SUBCASE("rejections carry field diagnostics") {
    CHECK_THROWS_WITH_AS(parse_scenario_config(R"({"suites":["nope"]})"),
                         doctest::Contains("unknown suite name"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_config(R"({"groups":["cyclic:-1"]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_config(R"({"draws_per_group":0})"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario_config(R"({"tolerances":{"rank_tol":-1}})"),
                         doctest::Contains("rank_tol"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario_config(R"({"mystery":1})"),
                         doctest::Contains("mystery"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_config("not json"), ConfigError);
  }

  SUBCASE("round trip") {
    const ScenarioConfig c = tiny_config();
    const ScenarioConfig back = parse_scenario_config(config_to_json(c));
    CHECK(back.groups == c.groups);
    CHECK(back.draws_per_group == c.draws_per_group);
    CHECK(back.seed == c.seed);
    CHECK(back.suites == c.suites);
  }
}

TEST_CASE("suite runs are deterministic and green on the tiny config") {
  const ScenarioConfig c = tiny_config();
  const auto records1 = run_suites(c);
  const auto records2 = run_suites(c);

  REQUIRE(!records1.empty());
  REQUIRE(records1.size() == records2.size());

  std::ostringstream jsonl1, jsonl2, csv1;
  write_jsonl(records1, jsonl1);
  write_jsonl(records2, jsonl2);
  CHECK(jsonl1.str() == jsonl2.str());  // byte-identical reports

  write_csv(records1, csv1);
  CHECK(csv1.str().rfind("group,seed,dim_fix,has_char,max_residual,pass", 0) == 0);

  const Totals t = totals_of(records1);
  CHECK(t.fail == 0);
  CHECK(t.pass > 0);

  // Records are sorted by (suite, case_id).
  for (std::size_t i = 1; i < records1.size(); ++i) {
    const auto key = [](const ReportRecord& r) { return std::pair(r.suite, r.case_id); };
    CHECK(key(records1[i - 1]) <= key(records1[i]));
  }
}

TEST_CASE("a different seed changes the report bytes") {
  ScenarioConfig c = tiny_config();
  c.suites = {"fixedpoint"};
  c.groups = {"cyclic:4"};
  const auto records1 = run_suites(c);
  c.seed = 4;
  const auto records2 = run_suites(c);
  std::ostringstream a, b;
  write_jsonl(records1, a);
  write_jsonl(records2, b);
  CHECK(a.str() != b.str());
}

TEST_CASE("lattice and mukherjea_dual suites run clean") {
  ScenarioConfig c = default_config();
  c.groups = {"cyclic:6"};
  c.draws_per_group = 4;
  c.seed = 5;
  c.suites = {"lattice", "mukherjea_dual"};
  const auto records = run_suites(c);
  REQUIRE(!records.empty());
  CHECK(totals_of(records).fail == 0);

  bool saw_simple_walk = false;
  for (const auto& r : records)
    if (r.case_id == "lattice/Z/fixture/simple-walk") {
      saw_simple_walk = true;
      // The exact binomial value is recorded as a residual of zero.
      bool found = false;
      for (const auto& [name, v] : r.residuals)
        if (name == "pow4_at_0") {
          found = true;
          CHECK(v == 0.0);
        }
      CHECK(found);
    }
  CHECK(saw_simple_walk);
}

TEST_CASE("explain replays a record with its residuals") {
  ScenarioConfig c = tiny_config();
  c.groups = {"cyclic:4"};
  c.draws_per_group = 3;
  c.suites = {"fixedpoint"};
  const auto records = run_suites(c);
  REQUIRE(!records.empty());

  // Find the Z4 no-character fixture and replay it.
  std::string line;
  for (const auto& r : records)
    if (r.case_id == "fixedpoint/cyclic:4/fixture/no-character") line = r.to_jsonl();
  REQUIRE(!line.empty());
  const std::string text = explain_record(line);
  CHECK(text.find("conflict witness") != std::string::npos);
  CHECK(text.find("dim Fix L_omega = 0") != std::string::npos);

  // delta-walk fixture shows the Cesaro limit.
  for (const auto& r : records)
    if (r.case_id == "fixedpoint/cyclic:4/fixture-delta/g1") line = r.to_jsonl();
  const std::string walk = explain_record(line);
  CHECK(walk.find("cesaro limit") != std::string::npos);

  CHECK_THROWS_AS(explain_record("not json"), ConfigError);
}

TEST_CASE("explain reproduces recorded residuals to the last digit") {
  ScenarioConfig c = default_config();
  c.groups = {"symmetric:3"};
  c.draws_per_group = 9;
  c.suites = {"fixedpoint"};
  const auto records = run_suites(c);

  // Pick a draw with a character-factor residual and compare the recorded
  // 17-digit rendering against the replayed one.
  for (const auto& r : records) {
    if (r.case_id.find("/draw/") == std::string::npos) continue;
    double recorded = -1.0;
    for (const auto& [name, v] : r.residuals)
      if (name == "fix_transport_angle") recorded = v;
    if (recorded < 0.0) continue;
    const std::string text = explain_record(r.to_jsonl());
    const std::string needle = "residual fix_transport_angle = " + json_number(recorded);
    CHECK(text.find(needle) != std::string::npos);
    return;
  }
  FAIL("no fixedpoint draw carried a transport residual");
}

TEST_CASE("explain replays dual records") {
  ScenarioConfig c = default_config();
  c.groups = {"cyclic:6"};
  c.draws_per_group = 3;
  c.suites = {"dual"};
  const auto records = run_suites(c);
  std::string line;
  for (const auto& r : records)
    if (r.case_id == "dual/cyclic:6/fixture/z6-char") line = r.to_jsonl();
  REQUIRE(!line.empty());
  const std::string text = explain_record(line);
  CHECK(text.find("certificate: positive-definite") != std::string::npos);
  CHECK(text.find("Z set = { 0 3 }") != std::string::npos);
  CHECK(text.find("dim 2") != std::string::npos);
}

TEST_CASE("find_record_line locates cases by id") {
  ScenarioConfig c = tiny_config();
  c.groups = {"cyclic:4"};
  c.draws_per_group = 2;
  c.suites = {"measure"};
  const auto records = run_suites(c);
  std::ostringstream jsonl;
  write_jsonl(records, jsonl);
  const auto found = find_record_line(jsonl.str(), records.front().case_id);
  REQUIRE(found);
  CHECK(found->find(records.front().case_id) != std::string::npos);
  CHECK_FALSE(find_record_line(jsonl.str(), "no/such/case"));
}

TEST_CASE("report records expose the CSV columns") {
  ReportRecord r;
  r.suite = "fixedpoint";
  r.case_id = "fixedpoint/cyclic:4/draw/00001";
  r.group = "cyclic:4";
  r.seed_text = "12345";
  r.dim_fix = 2;
  r.has_char = true;
  r.residuals = {{"a", 0.5}, {"b", -2.0}};
  CHECK(r.max_residual() == 2.0);
  const std::string line = r.to_jsonl();
  CHECK(line.find("\"dim_fix\":2") != std::string::npos);
  CHECK(line.find("\"has_char\":true") != std::string::npos);
  CHECK(line.find("\"verdict\":\"pass\"") != std::string::npos);
}

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "convfix/suites.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_command(const std::string& config_path, const std::string& out_path,
                const std::string& summary_path) {
  convfix::ScenarioConfig config =
      config_path.empty() ? convfix::default_config()
                          : convfix::parse_scenario_config(read_file(config_path));

  const std::vector<convfix::ReportRecord> records = convfix::run_suites(config);

  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + out_path);
    convfix::write_jsonl(records, out);
  }
  {
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + summary_path);
    convfix::write_csv(records, out);
  }
  convfix::print_totals(records, std::cout);
  return convfix::totals_of(records).fail == 0 ? 0 : 1;
}

int explain_command(const std::string& replay_path, const std::string& report_path,
                    const std::string& case_id) {
  std::string record_line;
  if (!replay_path.empty()) {
    record_line = read_file(replay_path);
  } else {
    const auto found = convfix::find_record_line(read_file(report_path), case_id);
    if (!found) throw convfix::ConfigError("unknown case id '" + case_id + "'");
    record_line = *found;
  }
  std::cout << convfix::explain_record(record_line);
  return 0;
}

int gen_measure_command(const std::string& group_spec, const std::string& profile_name,
                        std::uint64_t seed, double density) {
  convfix::DrawProfile profile;
  profile.density = density;
  if (profile_name == "complex") {
    profile.kind = convfix::MeasureProfile::Complex;
  } else if (profile_name == "real-signed") {
    profile.kind = convfix::MeasureProfile::RealSigned;
  } else if (profile_name == "character-twisted") {
    profile.kind = convfix::MeasureProfile::CharacterTwisted;
  } else {
    throw convfix::ConfigError("unknown profile '" + profile_name +
                               "' (complex, real-signed, character-twisted)");
  }

  if (group_spec == "Z") {
    if (profile.kind == convfix::MeasureProfile::CharacterTwisted)
      throw convfix::ConfigError("character-twisted profile needs a finite group");
    std::cout << convfix::measure_to_json(convfix::random_contractive_lattice(seed, profile))
              << "\n";
    return 0;
  }

  convfix::GroupPtr g = convfix::build_group(group_spec);
  if (profile.kind == convfix::MeasureProfile::CharacterTwisted) {
    // Subgroup and character picked deterministically from the seed.
    convfix::Rng rng(seed);
    const auto subgroups = convfix::all_subgroups(g);
    const convfix::Subgroup h = subgroups[rng.below(subgroups.size())];
    const auto chars = convfix::characters_of(h);
    profile.twist_subgroup = h;
    profile.twist_character = chars[rng.below(chars.size())];
  }
  std::cout << convfix::measure_to_json(convfix::random_contractive(g, seed, profile)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convfix: fixed points and Cesaro limits of convolution operators at desk scale"};
  app.require_subcommand(1);

  std::string config_path, out_path = "report.jsonl", summary_path = "summary.csv";
  CLI::App* run = app.add_subcommand("run", "run verification suites");
  run->add_option("--config", config_path, "scenario config JSON (defaults to built-ins)");
  run->add_option("--out", out_path, "JSON-lines report path");
  run->add_option("--summary", summary_path, "CSV summary path");

  std::string replay_path, report_path, case_id, explain_group, explain_measure;
  bool explain_lattice = false;
  CLI::App* explain = app.add_subcommand("explain", "re-run one recorded case verbosely");
  explain->add_option("--replay", replay_path, "a single JSON-lines record file");
  explain->add_option("--report", report_path, "JSON-lines report to search");
  explain->add_option("--case", case_id, "case id to look up inside --report");
  explain->add_option("--group", explain_group, "analyse an inline measure on this group");
  explain->add_option("--measure", explain_measure, "inline measure literal, e.g. 0:0.5, 2:-0.5");
  explain->add_flag("--lattice", explain_lattice, "the inline measure lives on Z");

  std::string group_spec = "cyclic:4", profile_name = "complex";
  std::uint64_t seed = 1;
  double density = 0.5;
  CLI::App* gen = app.add_subcommand("gen-measure", "emit a seeded contractive measure as JSON");
  gen->add_option("--group", group_spec, "group spec or Z");
  gen->add_option("--profile", profile_name, "complex | real-signed | character-twisted");
  gen->add_option("--seed", seed, "draw seed");
  gen->add_option("--density", density, "support density in (0, 1]");

  std::string dump_spec;
  bool dump = false;
  CLI::App* group = app.add_subcommand("group", "build and dump a group table");
  group->add_option("--spec", dump_spec, "group spec")->required();
  group->add_flag("--dump", dump, "dump the table as JSON");

  std::string dual_group_spec = "cyclic:6", dual_literal = "char:1";
  CLI::App* dual = app.add_subcommand("dual", "analyse a B(G) element: Z set and VN fixed space");
  dual->add_option("--group", dual_group_spec, "finite group spec");
  dual->add_option("--fn", dual_literal, "dual literal: char:k or g:re+imi,...");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, out_path, summary_path);
    if (explain->parsed()) {
      if (!explain_measure.empty()) {
        // Ad-hoc analysis of an inline measure literal.
        convfix::ComplexMeasure m =
            explain_lattice
                ? convfix::lattice_measure_from_literal(explain_measure)
                : convfix::measure_from_literal(explain_measure,
                                                convfix::build_group(
                                                    explain_group.empty() ? "cyclic:4"
                                                                          : explain_group));
        const std::string check = explain_lattice ? "cesaro" : "charfact";
        const std::string record = "{\"suite\":\"adhoc\",\"case_id\":\"adhoc\",\"verdict\":\"-\","
                                   "\"residuals\":{},\"artifacts\":{\"check\":\"" +
                                   check + "\",\"measure\":" + convfix::measure_to_json(m) + "}}";
        std::cout << convfix::explain_record(record);
        return 0;
      }
      if (replay_path.empty() && (report_path.empty() || case_id.empty()))
        throw convfix::ConfigError(
            "explain needs --replay, --report with --case, or --measure");
      return explain_command(replay_path, report_path, case_id);
    }
    if (gen->parsed()) return gen_measure_command(group_spec, profile_name, seed, density);
    if (group->parsed()) {
      convfix::GroupPtr g = convfix::build_group(dump_spec);
      if (dump) std::cout << convfix::group_to_json(*g) << "\n";
      else std::cout << g->name() << ": order " << g->order()
                     << (g->abelian() ? ", abelian" : ", non-abelian") << "\n";
      return 0;
    }
    if (dual->parsed()) {
      convfix::GroupPtr g = convfix::build_group(dual_group_spec);
      const convfix::DualFunction fn = convfix::dual_from_literal(dual_literal, g);
      std::cout << convfix::dual_to_json(fn) << "\n";
      const convfix::VnFixedReport rep = convfix::vn_fixed_space(fn);
      std::cout << "Z = {";
      for (int s : rep.z.z_set) std::cout << " " << g->label(s);
      std::cout << " }, coset: " << (rep.z.is_coset ? "yes" : "no")
                << ", dim Fix = " << rep.fixed.dim()
                << ", structural match: " << (rep.structural_match ? "yes" : "no") << "\n";
      return 0;
    }
  } catch (const convfix::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

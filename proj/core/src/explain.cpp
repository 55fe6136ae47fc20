#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "convfix/dual.hpp"
#include "convfix/fixed_point.hpp"
#include "convfix/suites.hpp"

namespace convfix {

namespace {

std::string fmt(double v) { return json_number(v); }

std::string fmt(cplx v) {
  std::ostringstream out;
  out << "(" << json_number(v.real()) << ", " << json_number(v.imag()) << ")";
  return out.str();
}

void print_measure(std::ostream& out, const ComplexMeasure& m, const std::string& label) {
  out << label << ": ";
  if (m.is_lattice()) {
    out << "Z carrier, atoms";
    for (const auto& [n, c] : m.atoms()) out << " " << n << "->" << fmt(c);
  } else {
    out << m.group()->name() << ", atoms";
    for (int g = 0; g < m.group()->order(); ++g)
      if (m.at(g) != cplx{0.0, 0.0})
        out << " " << m.group()->label(g) << "->" << fmt(m.at(g));
  }
  out << "  (tv = " << fmt(tv_norm(m)) << ")\n";
}

struct ReplayParams {
  Tolerances tolerances;
  Limits limits;
};

ReplayParams params_from(const nlohmann::json& artifacts) {
  ReplayParams p;
  if (!artifacts.contains("params")) return p;
  const auto& j = artifacts.at("params");
  p.tolerances.rank_tol = j.value("rank_tol", p.tolerances.rank_tol);
  p.tolerances.idem_tol = j.value("idem_tol", p.tolerances.idem_tol);
  p.tolerances.z_tol = j.value("z_tol", p.tolerances.z_tol);
  p.tolerances.cesaro_eps = j.value("cesaro_eps", p.tolerances.cesaro_eps);
  p.limits.n_max = j.value("n_max", p.limits.n_max);
  p.limits.window = j.value("window", p.limits.window);
  p.limits.support_cap = j.value("support_cap", p.limits.support_cap);
  return p;
}

void explain_measure_case(std::ostream& out, const std::string& check, const ComplexMeasure& m,
                          const ReplayParams& p) {
  print_measure(out, m, "measure");
  if (!m.is_lattice()) {
    print_measure(out, absolute_value(m), "|measure|");
    if (tv_norm(m) > 0.0) {
      ExtractResult ext = extract_character(m);
      if (std::holds_alternative<CharacterMap>(ext)) {
        const CharacterMap& chi = std::get<CharacterMap>(ext);
        out << "character on G_|omega| (order " << chi.domain().order() << "):";
        for (int h : chi.domain().elements)
          out << " " << m.group()->label(h) << "->" << fmt(chi.at(h));
        out << "\n";
      } else {
        out << "no character; conflict witness: "
            << std::get<NoCharacter>(ext).conflict.describe(*m.group()) << "\n";
      }
      const Subspace fix = fixed_subspace(m, p.tolerances.rank_tol);
      out << "dim Fix L_omega = " << fix.dim() << "\n";
    }
  }

  const CesaroOptions opts{p.tolerances.cesaro_eps, p.limits.n_max, p.limits.window,
                           p.limits.support_cap};
  if (check == "cesaro" || check == "charfact" || check == "equiv") {
    const CesaroTrace trace = cesaro_limit(m, opts);
    out << "cesaro residuals:";
    for (const auto& [n, res] : trace.residuals) out << " (n=" << n << ", " << fmt(res) << ")";
    out << "\n";
    switch (trace.verdict) {
      case CesaroTrace::Verdict::ConvergedTo:
        print_measure(out, *trace.limit, "cesaro limit");
        break;
      case CesaroTrace::Verdict::ConvergedToZero: out << "cesaro verdict: converged to zero\n"; break;
      case CesaroTrace::Verdict::Undecided: out << "cesaro verdict: undecided\n"; break;
    }
  }
  if (check == "charfact" && !m.is_lattice() && tv_norm(m) > 0.0) {
    const FixedPointReport rep = verify_character_factorization(m, 1e-8);
    out << "charfact: dim_fix=" << rep.dim_fix << " factorization_ok=" << rep.factorization_ok
        << " structural_checked=" << rep.structural_checked
        << " structural_match=" << rep.structural_match << "\n";
    for (const auto& [name, v] : rep.residuals) out << "  residual " << name << " = " << fmt(v) << "\n";
  }
  if (check == "equiv" && !m.is_lattice()) {
    const EquivalenceReport rep = equivalence_suite(m, p.tolerances.rank_tol);
    out << "equivalences: cesaro_nonzero=" << rep.cesaro_nonzero
        << " limit_idempotent=" << rep.limit_idempotent << " fixed_nonzero=" << rep.fixed_nonzero
        << " left_fixed_exists=" << rep.left_fixed_exists << "\n";
  }
  if (check == "ideal" && !m.is_lattice()) {
    const IdealReport rep = ideal_I_omega(m, p.tolerances.rank_tol);
    out << "ideal: dim I = " << rep.dim_ideal << ", dim Fix = " << rep.dim_fix
        << ", annihilator angle = " << fmt(rep.annihilator_angle) << "\n";
  }
  if (check == "classify" && !m.is_lattice()) {
    const ClassifyResult res = classify_idempotent(m, p.tolerances.idem_tol);
    if (const auto* form = std::get_if<GreenleafForm>(&res)) {
      out << "classification: chi * m_H with |H| = " << form->subgroup.order() << ", H = {";
      for (int h : form->subgroup.elements) out << " " << m.group()->label(h);
      out << " }\n";
    } else if (std::holds_alternative<NotGreenleafForm>(res)) {
      out << "classification: idempotent but no Greenleaf fit: "
          << std::get<NotGreenleafForm>(res).reason << "\n";
    } else {
      out << "classification: not idempotent\n";
    }
  }
  if (check == "lattice") {
    const MukherjeaLatticeReport rep =
        mukherjea_lattice(m, p.limits.window, std::min<long long>(p.limits.n_max, 2048), 0.05,
                          p.limits.support_cap);
    out << "lattice: compact=" << rep.compact << " iterate_sup=" << fmt(rep.iterate_sup)
        << " cesaro_sup=" << fmt(rep.cesaro_sup) << " consistent=" << rep.consistent << "\n";
  }
  if (check == "abelian_prop" && !m.is_lattice()) {
    const AbelianPropReport rep = abelian_prop_check(m, p.tolerances.z_tol);
    out << "abelian-prop: Z nonempty=" << rep.z_nonempty
        << " phase-is-character=" << rep.phase_is_character << " iff=" << rep.iff_holds
        << " coset_match=" << rep.coset_match << "\n";
  }
}

DualFunction dual_from_artifacts(const nlohmann::json& dual_json, const ReplayParams& p) {
  const std::string carrier = dual_json.at("carrier").get<std::string>();
  if (carrier == "Z") {
    AtomicToralMeasure toral;
    for (const auto& a : dual_json.value("atoms", nlohmann::json::array()))
      toral.atoms.push_back({cplx{a.value("re", 0.0), a.value("im", 0.0)}, a.value("theta", 0.0)});
    return make_dual_lattice(toral, p.limits.window);
  }
  GroupPtr g = build_group(carrier);
  std::vector<cplx> values(g->order(), cplx{0.0, 0.0});
  for (const auto& v : dual_json.value("values", nlohmann::json::array()))
    values[v.at("g").get<int>()] = cplx{v.value("re", 0.0), v.value("im", 0.0)};
  return make_dual(std::move(g), std::move(values));
}

void explain_dual_case(std::ostream& out, const std::string& check, const DualFunction& d,
                       const nlohmann::json& artifacts, const ReplayParams& p) {
  out << "dual function on " << (d.is_lattice() ? "Z" : d.group()->name())
      << ", certificate: " << certificate_kind_name(d.certificate().kind);
  if (d.certificate().norm) out << " (norm " << fmt(*d.certificate().norm) << ")";
  out << "\n";
  if (d.is_lattice()) {
    out << "toral atoms:";
    for (const auto& a : d.toral().atoms) out << " " << fmt(a.coeff) << "@" << fmt(a.angle);
    out << "\n";
  } else {
    const ZSetReport z = z_set(d, p.tolerances.z_tol);
    out << "Z set = {";
    for (int s : z.z_set) out << " " << d.group()->label(s);
    out << " } is_coset=" << z.is_coset;
    if (z.rep) out << " rep=" << d.group()->label(*z.rep);
    out << " near_miss=" << fmt(z.near_miss) << "\n";
    const VnFixedReport rep = vn_fixed_space(d, p.tolerances.z_tol);
    out << "VN fixed space: dim " << rep.fixed.dim() << ", structural_match=" << rep.structural_match
        << "\n";
  }
  if (check == "mdual") {
    std::vector<ComplexMeasure> fns;
    for (const auto& f : artifacts.value("test_fns", nlohmann::json::array()))
      fns.push_back(measure_from_json(f.dump()));
    const long long n_max = artifacts.value("n_max", p.limits.n_max);
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, n_max, 1e-2);
    for (const auto& cs : rep.cases)
      out << "  " << cs.test_fn << ": cesaro=" << fmt(cs.cesaro_direct)
          << " closed_form=" << fmt(cs.cesaro_closed_form) << " iterate=" << fmt(cs.iterate)
          << " agreement=" << fmt(cs.agreement) << "\n";
    out << "mdual: z_nonempty=" << rep.z_nonempty << " max_off_z=" << fmt(rep.max_cesaro_off_z)
        << " min_on_z=" << fmt(rep.min_cesaro_on_z) << " consistent=" << rep.consistent << "\n";
  }
}

}  // namespace

std::string explain_record(const std::string& record_json) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(record_json);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("replay record parse error: ") + e.what());
  }

  std::ostringstream out;
  out << "case " << record.value("case_id", std::string("<unknown>")) << " ["
      << record.value("suite", std::string("?")) << "] verdict "
      << record.value("verdict", std::string("?")) << "\n";
  if (record.contains("residuals"))
    for (const auto& [name, v] : record.at("residuals").items())
      out << "  recorded residual " << name << " = " << fmt(v.get<double>()) << "\n";

  if (!record.contains("artifacts")) {
    out << "no embedded artifacts; nothing to replay\n";
    return out.str();
  }
  const nlohmann::json& artifacts = record.at("artifacts");
  const std::string check = artifacts.value("check", std::string(""));
  const ReplayParams p = params_from(artifacts);

  out << "replaying check '" << check << "'\n";
  if (artifacts.contains("measure")) {
    const ComplexMeasure m = measure_from_json(artifacts.at("measure").dump());
    explain_measure_case(out, check, m, p);
    if (artifacts.contains("second"))
      print_measure(out, measure_from_json(artifacts.at("second").dump()), "second measure");
    if (artifacts.contains("third"))
      print_measure(out, measure_from_json(artifacts.at("third").dump()), "third measure");
  } else if (artifacts.contains("dual")) {
    explain_dual_case(out, check, dual_from_artifacts(artifacts.at("dual"), p), artifacts, p);
  } else {
    out << "artifacts carry no measure or dual function\n";
  }
  return out.str();
}

}  // namespace convfix

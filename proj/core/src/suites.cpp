#include "convfix/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <semaphore>
#include <sstream>

#include "convfix/dual.hpp"
#include "convfix/fixed_point.hpp"

namespace convfix {

namespace {

constexpr double kAngleTol = 1e-8;
constexpr double kTvMatchTol = 1e-8;

std::string pad_index(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%05d", i);
  return buf;
}

std::string params_json(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "{\"rank_tol\":" << json_number(c.tolerances.rank_tol)
      << ",\"idem_tol\":" << json_number(c.tolerances.idem_tol)
      << ",\"z_tol\":" << json_number(c.tolerances.z_tol)
      << ",\"cesaro_eps\":" << json_number(c.tolerances.cesaro_eps)
      << ",\"n_max\":" << c.limits.n_max << ",\"window\":" << c.limits.window
      << ",\"support_cap\":" << c.limits.support_cap << "}";
  return out.str();
}

std::string measure_artifacts(const ScenarioConfig& c, const std::string& check,
                              const ComplexMeasure& m, const std::string& extra = "") {
  std::string out = "{\"check\":\"" + check + "\",\"params\":" + params_json(c) +
                    ",\"measure\":" + measure_to_json(m);
  if (!extra.empty()) out += "," + extra;
  out += "}";
  return out;
}

std::string dual_artifacts(const ScenarioConfig& c, const std::string& check,
                           const DualFunction& d, const std::string& extra = "") {
  std::string out = "{\"check\":\"" + check + "\",\"params\":" + params_json(c) +
                    ",\"dual\":" + dual_to_json(d);
  if (!extra.empty()) out += "," + extra;
  out += "}";
  return out;
}

struct GroupContext {
  GroupPtr g;
  std::string spec;
  std::vector<Subgroup> subgroups;
  std::vector<std::vector<CharacterMap>> subgroup_characters;
  std::vector<CharacterMap> full_characters;
};

GroupContext make_context(const std::string& spec) {
  GroupContext ctx;
  ctx.g = build_group(spec);
  ctx.spec = spec;
  ctx.subgroups = all_subgroups(ctx.g);
  ctx.subgroup_characters.reserve(ctx.subgroups.size());
  for (const Subgroup& h : ctx.subgroups) ctx.subgroup_characters.push_back(characters_of(h));
  ctx.full_characters = characters_of(full_subgroup(ctx.g));
  return ctx;
}

ComplexMeasure character_haar(const Subgroup& h, const CharacterMap& chi) {
  std::vector<std::pair<int, cplx>> atoms;
  const double w = 1.0 / static_cast<double>(h.elements.size());
  for (int s : h.elements) atoms.emplace_back(s, chi.at(s) * w);
  return ComplexMeasure::from_atoms(h.parent, atoms);
}

DrawProfile draw_profile(const GroupContext& ctx, Rng& rng, int draw_idx) {
  DrawProfile profile;
  switch (draw_idx % 3) {
    case 0: profile.kind = MeasureProfile::Complex; break;
    case 1: profile.kind = MeasureProfile::RealSigned; break;
    default: {
      profile.kind = MeasureProfile::CharacterTwisted;
      const std::size_t hi = rng.below(ctx.subgroups.size());
      profile.twist_subgroup = ctx.subgroups[hi];
      const auto& chars = ctx.subgroup_characters[hi];
      profile.twist_character = chars[rng.below(chars.size())];
      break;
    }
  }
  profile.density = 0.3 + 0.5 * rng.uniform();
  return profile;
}

ComplexMeasure probability_draw(const GroupPtr& g, std::uint64_t seed, double density) {
  DrawProfile profile;
  profile.kind = MeasureProfile::RealSigned;
  profile.density = density;
  ComplexMeasure m = absolute_value(random_contractive(g, seed, profile));
  const double mass = tv_norm(m);
  m *= cplx{1.0 / mass, 0.0};
  return m;
}

bool is_probability(const ComplexMeasure& m, double tol = 1e-12) {
  double mass = 0.0;
  if (m.is_lattice()) {
    for (const auto& [n, c] : m.atoms()) {
      if (c.real() < -tol || std::abs(c.imag()) > tol) return false;
      mass += c.real();
    }
  } else {
    for (const cplx& c : m.coeffs()) {
      if (c.real() < -tol || std::abs(c.imag()) > tol) return false;
      mass += c.real();
    }
  }
  return std::abs(mass - 1.0) <= tol * 16;
}

void push_residuals(ReportRecord& r, const std::vector<std::pair<std::string, double>>& more) {
  for (const auto& item : more) r.residuals.push_back(item);
}

// ---------------------------------------------------------------------------
// Check bundles shared by draws and fixtures.
// ---------------------------------------------------------------------------

std::string character_json(const CharacterMap& chi) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int h : chi.domain().elements) {
    if (!first) out << ',';
    first = false;
    out << '"' << h << "\":[" << json_number(chi.at(h).real()) << ','
        << json_number(chi.at(h).imag()) << ']';
  }
  out << '}';
  return out.str();
}

void apply_charfact(ReportRecord& r, const ComplexMeasure& m, const ScenarioConfig& c) {
  const FixedPointReport rep = verify_character_factorization(m, kAngleTol);
  r.dim_fix = rep.dim_fix;
  r.has_char = rep.character.has_value();
  push_residuals(r, rep.residuals);
  r.verdict = rep.ok ? Verdict::Pass : Verdict::Fail;
  std::string extra;
  if (rep.character) extra = "\"character\":" + character_json(*rep.character);
  r.artifacts_json = measure_artifacts(c, "charfact", m, extra);
}

void apply_cesaro(ReportRecord& r, const ComplexMeasure& m, const ScenarioConfig& c,
                  CesaroTrace::Verdict* expected = nullptr) {
  const CesaroTrace trace = cesaro_limit(m, c.cesaro_options());
  r.artifacts_json = measure_artifacts(c, "cesaro", m);
  if (!trace.residuals.empty())
    r.residuals.emplace_back("last_checkpoint_residual", trace.residuals.back().second);

  if (trace.verdict == CesaroTrace::Verdict::Undecided) {
    r.verdict = Verdict::Undecided;
    if (expected && *expected != CesaroTrace::Verdict::Undecided) r.verdict = Verdict::Fail;
    return;
  }
  if (expected && trace.verdict != *expected) {
    r.verdict = Verdict::Fail;
    return;
  }
  if (m.is_lattice()) {
    r.verdict = Verdict::Pass;
    return;
  }

  const CesaroProjectionReport proj = cesaro_projection_check(trace, kAngleTol);
  r.dim_fix = proj.dim_fix;
  push_residuals(r, proj.residuals);
  bool ok = proj.ok;

  if (trace.verdict == CesaroTrace::Verdict::ConvergedTo && proj.dim_fix > 0) {
    // The limit of a contractive measure with fixed points is chi * m_{G_|omega|}.
    ExtractResult ext = extract_character(m);
    if (!std::holds_alternative<CharacterMap>(ext)) {
      ok = false;
    } else {
      const CharacterMap& chi = std::get<CharacterMap>(ext);
      ComplexMeasure expected_limit = character_haar(chi.domain(), chi);
      expected_limit -= *trace.limit;
      const double mismatch = tv_norm(expected_limit);
      r.residuals.emplace_back("limit_vs_chi_haar", mismatch);
      ok = ok && mismatch <= kTvMatchTol;
      r.has_char = true;
    }
  }

  if (is_probability(m)) {
    // States: every snapshot is a probability and the verdict is never zero.
    if (trace.verdict == CesaroTrace::Verdict::ConvergedToZero) ok = false;
    double state_dev = 0.0;
    auto scan = [&](const cplx& v, double& mass, double& neg) {
      mass += v.real();
      neg = std::min(neg, v.real());
      state_dev = std::max(state_dev, std::abs(v.imag()));
    };
    for (const auto& [n, snap] : trace.terms) {
      double mass = 0.0, neg = 0.0;
      if (snap.is_lattice())
        for (const auto& [at, v] : snap.atoms()) scan(v, mass, neg);
      else
        for (const cplx& v : snap.coeffs()) scan(v, mass, neg);
      state_dev = std::max({state_dev, std::abs(mass - 1.0), -neg});
    }
    r.residuals.emplace_back("state_preservation", state_dev);
    ok = ok && state_dev <= 1e-12;
    if (trace.verdict == CesaroTrace::Verdict::ConvergedTo) {
      ComplexMeasure uniform = haar_on(adaptedness(m).generated);
      uniform -= *trace.limit;
      const double kawada = tv_norm(uniform);
      r.residuals.emplace_back("limit_vs_haar", kawada);
      ok = ok && kawada <= kTvMatchTol;
    }
  }
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
}

void apply_equivalences(ReportRecord& r, const ComplexMeasure& m, const ScenarioConfig& c) {
  const EquivalenceReport rep = equivalence_suite(m, c.tolerances.rank_tol);
  push_residuals(r, rep.residuals);
  r.verdict = rep.all_equal ? Verdict::Pass : Verdict::Fail;
  r.artifacts_json = measure_artifacts(c, "equiv", m);
}

void apply_ideal(ReportRecord& r, const ComplexMeasure& m, const ScenarioConfig& c) {
  const IdealReport rep = ideal_I_omega(m, c.tolerances.rank_tol);
  r.dim_fix = rep.dim_fix;
  push_residuals(r, rep.residuals);
  bool ok = rep.rank_sum_exact && rep.annihilator_angle <= kAngleTol;
  if (rep.is_state) ok = ok && rep.augmentation_residual <= 1e-12;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  r.artifacts_json = measure_artifacts(c, "ideal", m);
}

void apply_lp(ReportRecord& r, const ComplexMeasure& m, double p, const ScenarioConfig& c,
              bool expect_line) {
  const LpReport rep = lp_fixed_points(m, p, kAngleTol);
  r.dim_fix = rep.fixed.dim();
  r.has_char = rep.character_found;
  push_residuals(r, rep.residuals);
  bool ok = true;
  if (rep.character_found)
    ok = rep.range_match;
  else
    ok = rep.fixed.dim() == 0;
  if (expect_line) ok = ok && rep.fixed.dim() == 1;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  char extra[64];
  std::snprintf(extra, sizeof(extra), "\"p\":%s,\"expect_line\":%s", json_number(p).c_str(),
                expect_line ? "true" : "false");
  r.artifacts_json = measure_artifacts(c, "lp", m, extra);
}

// ---------------------------------------------------------------------------
// measure suite
// ---------------------------------------------------------------------------

std::vector<ReportRecord> run_measure_suite(const ScenarioConfig& c, const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "measure";
    r.case_id = "measure/" + ctx.spec + "/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = ctx.spec;
    return r;
  };

  // delta_e is an exact two-sided unit.
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "measure/unit/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ComplexMeasure lhs = convolve(ComplexMeasure::delta(ctx.g, ctx.g->identity()), m);
    lhs -= m;
    ComplexMeasure rhs = convolve(m, ComplexMeasure::delta(ctx.g, ctx.g->identity()));
    rhs -= m;
    ReportRecord r = base("unit", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.residuals.emplace_back("left_unit", tv_norm(lhs));
    r.residuals.emplace_back("right_unit", tv_norm(rhs));
    r.verdict = tv_norm(lhs) == 0.0 && tv_norm(rhs) == 0.0 ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "unit", m);
    out.push_back(std::move(r));
  }

  const int draws = c.draws_per_group;
  for (int i = 0; i < draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "measure/assoc/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure a = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ComplexMeasure b = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i + 1));
    ComplexMeasure d = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i + 2));

    ReportRecord r = base("assoc", pad_index(i));
    r.seed_text = std::to_string(seed);
    ComplexMeasure lhs = convolve(convolve(a, b), d);
    lhs -= convolve(a, convolve(b, d));
    const double assoc = tv_norm(lhs);
    const double submult = tv_norm(convolve(a, b)) - tv_norm(a) * tv_norm(b);
    r.residuals.emplace_back("associativity", assoc);
    r.residuals.emplace_back("submultiplicativity", submult);
    r.verdict = assoc <= 1e-12 && submult <= 1e-12 ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(a) + measure_to_json(b) + measure_to_json(d));
    r.artifacts_json = measure_artifacts(c, "assoc", a, "\"second\":" + measure_to_json(b) +
                                                           ",\"third\":" + measure_to_json(d));
    out.push_back(std::move(r));
  }

  for (int i = 0; i < draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "measure/polar/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    const auto phases = polar_phase(m);
    const ComplexMeasure abs = absolute_value(m);
    double residual = 0.0;
    for (const auto& [g, phase] : phases)
      residual = std::max(residual, std::abs(m.at(g) - phase * abs.at(g)));
    ReportRecord r = base("polar", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.residuals.emplace_back("reconstruction", residual);
    r.verdict = residual <= 1e-14 ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "polar", m);
    out.push_back(std::move(r));
  }

  // Greenleaf classification over every (H, chi) pair.
  for (std::size_t hi = 0; hi < ctx.subgroups.size(); ++hi) {
    for (std::size_t ci = 0; ci < ctx.subgroup_characters[hi].size(); ++ci) {
      const Subgroup& h = ctx.subgroups[hi];
      const CharacterMap& chi = ctx.subgroup_characters[hi][ci];
      const ComplexMeasure m = character_haar(h, chi);
      ReportRecord r = base("greenleaf", "H" + std::to_string(hi) + "-chi" + std::to_string(ci));
      const ClassifyResult res = classify_idempotent(m, c.tolerances.idem_tol);
      bool ok = false;
      if (const auto* form = std::get_if<GreenleafForm>(&res))
        ok = form->subgroup.same_elements(h) && form->character.same_as(chi, 1e-12);
      r.verdict = ok ? Verdict::Pass : Verdict::Fail;
      r.digest = digest_of(measure_to_json(m));
      r.artifacts_json = measure_artifacts(c, "classify", m);
      out.push_back(std::move(r));
    }
  }

  // Random non-idempotent draws classify as NotIdempotent.
  const int neg_draws = std::min(draws, 200);
  for (int i = 0; i < neg_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "measure/greenleaf-random/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    int guard = 0;
    while (is_idempotent(m, c.tolerances.idem_tol) && guard++ < 64)
      m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ReportRecord r = base("greenleaf-random", pad_index(i));
    r.seed_text = std::to_string(seed);
    const ClassifyResult res = classify_idempotent(m, c.tolerances.idem_tol);
    r.verdict = std::holds_alternative<NotIdempotent>(res) ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "classify", m);
    out.push_back(std::move(r));
  }

  // adaptedness flags on deltas: delta_g adapted iff <g> = G.
  for (int g = 0; g < ctx.g->order(); ++g) {
    const ComplexMeasure m = ComplexMeasure::delta(ctx.g, g);
    const Adaptedness a = adaptedness(m);
    const bool expect = subgroup_closure(ctx.g, {g}).order() == ctx.g->order();
    ReportRecord r = base("adapted", "g" + std::to_string(g));
    r.verdict = a.adapted == expect && a.nondegenerate == a.adapted ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// fixedpoint suite
// ---------------------------------------------------------------------------

std::vector<ReportRecord> run_fixedpoint_suite(const ScenarioConfig& c, const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "fixedpoint";
    r.case_id = "fixedpoint/" + ctx.spec + "/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = ctx.spec;
    return r;
  };

  const int draws = c.draws_per_group;
  for (int i = 0; i < draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "fixedpoint/draw/" + ctx.spec, i);
    Rng rng(seed);
    const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ReportRecord r = base("draw", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.digest = digest_of(measure_to_json(m));
    apply_charfact(r, m, c);
    out.push_back(std::move(r));
  }

  // Left/right convolution operators commute.
  const int commute_draws = std::min(draws, 64);
  for (int i = 0; i < commute_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "fixedpoint/commute/" + ctx.spec, i);
    Rng rng(seed);
    const ComplexMeasure a = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    const ComplexMeasure b = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i + 1));
    const Eigen::MatrixXcd left = operator_matrix(a, Convention::Left);
    const Eigen::MatrixXcd right = operator_matrix(b, Convention::Right);
    const double residual = (left * right - right * left).cwiseAbs().maxCoeff();
    ReportRecord r = base("commute", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.residuals.emplace_back("commutator", residual);
    r.verdict = residual <= 1e-10 ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(a) + measure_to_json(b));
    r.artifacts_json = measure_artifacts(c, "commute", a, "\"second\":" + measure_to_json(b));
    out.push_back(std::move(r));
  }

  const int cesaro_draws = std::min(draws, 64);
  for (int i = 0; i < cesaro_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "fixedpoint/cesaro/" + ctx.spec, i);
    Rng rng(seed);
    const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ReportRecord r = base("cesaro", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.digest = digest_of(measure_to_json(m));
    apply_cesaro(r, m, c);
    out.push_back(std::move(r));
  }

  const int equiv_draws = std::min(draws, 64);
  for (int i = 0; i < equiv_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "fixedpoint/equiv/" + ctx.spec, i);
    Rng rng(seed);
    const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ReportRecord r = base("equiv", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.digest = digest_of(measure_to_json(m));
    apply_equivalences(r, m, c);
    out.push_back(std::move(r));
  }

  // Convention sanity: L_{delta_a} f = f(a t) exactly.
  {
    double residual = 0.0;
    for (int a = 0; a < ctx.g->order(); ++a) {
      const Eigen::MatrixXcd l =
          operator_matrix(ComplexMeasure::delta(ctx.g, a), Convention::Left);
      for (int t = 0; t < ctx.g->order(); ++t)
        for (int u = 0; u < ctx.g->order(); ++u) {
          const double expect = ctx.g->mul(a, t) == u ? 1.0 : 0.0;
          residual = std::max(residual, std::abs(l(t, u) - expect));
        }
    }
    ReportRecord r = base("convention", "");
    r.residuals.emplace_back("translation", residual);
    r.verdict = residual == 0.0 ? Verdict::Pass : Verdict::Fail;
    r.artifacts_json =
        "{\"check\":\"convention\",\"group\":\"" + json_escape(ctx.spec) + "\"}";
    out.push_back(std::move(r));
  }

  // Fixtures with known Cesaro behaviour.
  {
    ReportRecord r = base("fixture", "mG");
    const ComplexMeasure m = haar_on(full_subgroup(ctx.g));
    r.digest = digest_of(measure_to_json(m));
    CesaroTrace::Verdict expect = CesaroTrace::Verdict::ConvergedTo;
    apply_cesaro(r, m, c, &expect);
    out.push_back(std::move(r));
  }
  {
    ReportRecord r = base("fixture", "minus-delta-e");
    const ComplexMeasure m = cplx{-1.0, 0.0} * ComplexMeasure::delta(ctx.g, ctx.g->identity());
    r.digest = digest_of(measure_to_json(m));
    CesaroTrace::Verdict expect = CesaroTrace::Verdict::ConvergedToZero;
    apply_cesaro(r, m, c, &expect);
    out.push_back(std::move(r));
  }
  {
    ReportRecord r = base("fixture", "minus-delta-e-equiv");
    const ComplexMeasure m = cplx{-1.0, 0.0} * ComplexMeasure::delta(ctx.g, ctx.g->identity());
    r.digest = digest_of(measure_to_json(m));
    apply_equivalences(r, m, c);
    out.push_back(std::move(r));
  }

  // chi * m_H fixtures: idempotent, so Cesaro-fixed, with full reports.
  for (std::size_t hi = 0; hi < ctx.subgroups.size(); ++hi) {
    for (std::size_t ci = 0; ci < ctx.subgroup_characters[hi].size(); ++ci) {
      const ComplexMeasure m = character_haar(ctx.subgroups[hi], ctx.subgroup_characters[hi][ci]);
      {
        ReportRecord r =
            base("fixture-chimH", "H" + std::to_string(hi) + "-chi" + std::to_string(ci));
        r.digest = digest_of(measure_to_json(m));
        CesaroTrace::Verdict expect = CesaroTrace::Verdict::ConvergedTo;
        apply_cesaro(r, m, c, &expect);
        out.push_back(std::move(r));
      }
      {
        ReportRecord r =
            base("fixture-chimH-verify", "H" + std::to_string(hi) + "-chi" + std::to_string(ci));
        r.digest = digest_of(measure_to_json(m));
        apply_charfact(r, m, c);
        out.push_back(std::move(r));
      }
    }
  }

  // Uniform measure on the non-trivial coset of an index-2 subgroup: an
  // adapted probability whose Cesaro limit is exactly m_G at even n.
  for (std::size_t hi = 0; hi < ctx.subgroups.size(); ++hi) {
    const Subgroup& h = ctx.subgroups[hi];
    if (2 * h.order() != ctx.g->order()) continue;
    int g_off = -1;
    for (int x = 0; x < ctx.g->order(); ++x)
      if (!h.contains(x)) {
        g_off = x;
        break;
      }
    const ComplexMeasure m = convolve(ComplexMeasure::delta(ctx.g, g_off), haar_on(h));
    ReportRecord r = base("fixture-index2", "H" + std::to_string(hi));
    r.digest = digest_of(measure_to_json(m));
    CesaroTrace::Verdict expect = CesaroTrace::Verdict::ConvergedTo;
    apply_cesaro(r, m, c, &expect);
    out.push_back(std::move(r));
  }

  // delta_g walks: exact convergence whenever the cyclic order is a power
  // of two (checkpoints align); otherwise the detector may stay undecided.
  for (int g = 0; g < ctx.g->order(); ++g) {
    const int ord = ctx.g->element_order(g);
    const bool pow2 = (ord & (ord - 1)) == 0;
    const ComplexMeasure m = ComplexMeasure::delta(ctx.g, g);
    ReportRecord r = base("fixture-delta", "g" + std::to_string(g));
    r.digest = digest_of(measure_to_json(m));
    if (pow2) {
      CesaroTrace::Verdict expect = CesaroTrace::Verdict::ConvergedTo;
      apply_cesaro(r, m, c, &expect);
    } else {
      apply_cesaro(r, m, c);
    }
    out.push_back(std::move(r));
  }

  // Representation fixed points: regular representation draws.
  const int rep_draws = std::min(draws, 16);
  const auto regular = regular_representation(*ctx.g);
  for (int i = 0; i < rep_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "fixedpoint/rep/" + ctx.spec, i);
    Rng rng(seed);
    const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    const RepFixedReport rep = representation_fixed_points(regular, m, kAngleTol);
    ReportRecord r = base("rep-regular", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.dim_fix = rep.fixed.dim();
    r.has_char = rep.character_found;
    push_residuals(r, rep.residuals);
    const bool consistency = rep.fixed.dim() == 0 || rep.character_found;
    r.verdict = rep.matched && consistency ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "rep", m, "\"rep\":\"regular\"");
    out.push_back(std::move(r));
  }

  if (ctx.spec == "dihedral:4" || ctx.spec == "quaternion8" || ctx.spec == "symmetric:3") {
    const auto pi2 = irrep_2d(*ctx.g);
    for (int i = 0; i < rep_draws; ++i) {
      const std::uint64_t seed = mix_seed(c.seed, "fixedpoint/rep2d/" + ctx.spec, i);
      Rng rng(seed);
      const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
      const RepFixedReport rep = representation_fixed_points(pi2, m, kAngleTol);
      ReportRecord r = base("rep-2d", pad_index(i));
      r.seed_text = std::to_string(seed);
      r.dim_fix = rep.fixed.dim();
      push_residuals(r, rep.residuals);
      const bool consistency = rep.fixed.dim() == 0 || rep.character_found;
      r.verdict = rep.matched && consistency ? Verdict::Pass : Verdict::Fail;
      r.digest = digest_of(measure_to_json(m));
      r.artifacts_json = measure_artifacts(c, "rep", m, "\"rep\":\"irrep2d\"");
      out.push_back(std::move(r));
    }
  }

  if (ctx.spec == "cyclic:4") {
    {
      // (delta_1 - delta_3)/2 admits no character, hence no fixed points.
      const ComplexMeasure m = ComplexMeasure::from_atoms(
          ctx.g, {{1, cplx{0.5, 0.0}}, {3, cplx{-0.5, 0.0}}});
      ReportRecord r = base("fixture", "no-character");
      r.digest = digest_of(measure_to_json(m));
      apply_charfact(r, m, c);
      if (r.verdict == Verdict::Pass && (*r.has_char || *r.dim_fix != 0))
        r.verdict = Verdict::Fail;
      out.push_back(std::move(r));

      ReportRecord r2 = base("fixture", "no-character-equiv");
      r2.digest = digest_of(measure_to_json(m));
      apply_equivalences(r2, m, c);
      out.push_back(std::move(r2));
    }
    {
      // i * delta_1: one fixed line spanned by t -> (-i)^t.
      const ComplexMeasure m = ComplexMeasure::from_atoms(ctx.g, {{1, cplx{0.0, 1.0}}});
      ReportRecord r = base("fixture", "i-delta");
      r.digest = digest_of(measure_to_json(m));
      apply_charfact(r, m, c);
      const Subspace fix = fixed_subspace(m, c.tolerances.rank_tol);
      Eigen::MatrixXcd expected(4, 1);
      for (int t = 0; t < 4; ++t) expected(t, 0) = 0.5 * std::pow(cplx{0.0, -1.0}, t);
      Subspace line;
      line.basis = expected;
      const double angle = principal_angle(fix, line);
      r.residuals.emplace_back("eigenvector_angle", angle);
      if (fix.dim() != 1 || angle > kAngleTol) r.verdict = Verdict::Fail;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ideals suite
// ---------------------------------------------------------------------------

std::vector<ReportRecord> run_ideals_suite(const ScenarioConfig& c, const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "ideals";
    r.case_id = "ideals/" + ctx.spec + "/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = ctx.spec;
    return r;
  };

  for (int i = 0; i < c.draws_per_group; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "ideals/draw/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure m;
    if (i % 4 == 3)
      m = probability_draw(ctx.g, rng.next(), 0.3 + 0.5 * rng.uniform());
    else
      m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ReportRecord r = base("draw", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.digest = digest_of(measure_to_json(m));
    apply_ideal(r, m, c);
    out.push_back(std::move(r));
  }

  {
    // Non-degenerate state: I_omega is the whole augmentation ideal.
    const std::uint64_t seed = mix_seed(c.seed, "ideals/nondeg/" + ctx.spec, 0);
    const ComplexMeasure m = probability_draw(ctx.g, seed, 1.0);
    const IdealReport rep = ideal_I_omega(m, c.tolerances.rank_tol);
    ReportRecord r = base("fixture", "nondeg-state");
    r.seed_text = std::to_string(seed);
    r.dim_fix = rep.dim_fix;
    push_residuals(r, rep.residuals);
    r.verdict = rep.equals_augmentation_ideal && rep.dim_fix == 1 ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "ideal", m);
    out.push_back(std::move(r));
  }
  {
    const ComplexMeasure m = ComplexMeasure::delta(ctx.g, ctx.g->identity());
    const IdealReport rep = ideal_I_omega(m, c.tolerances.rank_tol);
    ReportRecord r = base("fixture", "delta-e");
    r.dim_fix = rep.dim_fix;
    r.verdict = rep.dim_ideal == 0 && rep.dim_fix == ctx.g->order() ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "ideal", m);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// lp suite
// ---------------------------------------------------------------------------

std::vector<ReportRecord> run_lp_suite(const ScenarioConfig& c, const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "lp";
    r.case_id = "lp/" + ctx.spec + "/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = ctx.spec;
    return r;
  };
  const double p_values[3] = {1.0, 2.0, 3.5};

  // Adapted draws: full-support probabilities and full-character twists.
  for (int i = 0; i < c.draws_per_group; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "lp/adapted/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure m;
    if (i % 2 == 0) {
      m = probability_draw(ctx.g, rng.next(), 1.0);
    } else {
      DrawProfile profile;
      profile.kind = MeasureProfile::CharacterTwisted;
      profile.density = 1.0;
      profile.twist_subgroup = full_subgroup(ctx.g);
      profile.twist_character =
          ctx.full_characters[rng.below(ctx.full_characters.size())];
      m = random_contractive(ctx.g, rng.next(), profile);
    }
    ReportRecord r = base("adapted", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.digest = digest_of(measure_to_json(m));
    apply_lp(r, m, p_values[i % 3], c, /*expect_line=*/true);
    out.push_back(std::move(r));
  }

  for (int i = 0; i < std::min(c.draws_per_group, 64); ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "lp/general/" + ctx.spec, i);
    Rng rng(seed);
    const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
    ReportRecord r = base("general", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.digest = digest_of(measure_to_json(m));
    apply_lp(r, m, p_values[i % 3], c, /*expect_line=*/false);
    out.push_back(std::move(r));
  }

  if (ctx.spec == "cyclic:4") {
    const ComplexMeasure m = ComplexMeasure::from_atoms(ctx.g, {{1, cplx{0.0, 1.0}}});
    ReportRecord r = base("fixture", "i-delta");
    r.digest = digest_of(measure_to_json(m));
    apply_lp(r, m, 2.0, c, /*expect_line=*/true);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// lattice suite (Z carrier)
// ---------------------------------------------------------------------------

std::vector<ReportRecord> run_lattice_suite(const ScenarioConfig& c) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "lattice";
    r.case_id = "lattice/Z/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = "Z";
    return r;
  };
  const long long n_lattice = std::min<long long>(c.limits.n_max, 2048);
  const double decay_eps = 0.05;

  auto lattice_artifacts = [&](const ComplexMeasure& m) {
    std::ostringstream extra;
    extra << "\"window\":" << c.limits.window << ",\"n\":" << n_lattice
          << ",\"eps\":" << json_number(decay_eps);
    return measure_artifacts(c, "lattice", m, extra.str());
  };

  {
    // Simple symmetric walk: exact 4th-power value and windowed decay.
    const ComplexMeasure m = ComplexMeasure::lattice_from_atoms(
        {{-1, cplx{0.5, 0.0}}, {1, cplx{0.5, 0.0}}}, LatticeGroup{c.limits.window});
    ComplexMeasure pow4 = convolve(m, m, c.limits.support_cap);
    pow4 = convolve(pow4, pow4, c.limits.support_cap);
    const double at0 = pow4.at_lattice(0).real();

    ReportRecord r = base("fixture", "simple-walk");
    r.digest = digest_of(measure_to_json(m));
    r.residuals.emplace_back("pow4_at_0", at0 - 0.375);
    const MukherjeaLatticeReport rep =
        mukherjea_lattice(m, c.limits.window, n_lattice, decay_eps, c.limits.support_cap);
    push_residuals(r, rep.residuals);
    r.verdict = at0 == 0.375 && rep.consistent && !rep.compact ? Verdict::Pass : Verdict::Fail;
    r.artifacts_json = lattice_artifacts(m);
    out.push_back(std::move(r));
  }
  {
    const ComplexMeasure m = ComplexMeasure::lattice_delta(0, LatticeGroup{c.limits.window});
    const MukherjeaLatticeReport rep =
        mukherjea_lattice(m, c.limits.window, n_lattice, decay_eps, c.limits.support_cap);
    ReportRecord r = base("fixture", "delta0");
    r.digest = digest_of(measure_to_json(m));
    push_residuals(r, rep.residuals);
    r.verdict = rep.consistent && rep.compact && !rep.decay ? Verdict::Pass : Verdict::Fail;
    r.artifacts_json = lattice_artifacts(m);
    out.push_back(std::move(r));
  }
  {
    const ComplexMeasure m = ComplexMeasure::lattice_from_atoms(
        {{2, cplx{0.5, 0.0}}, {4, cplx{0.5, 0.0}}}, LatticeGroup{c.limits.window});
    const MukherjeaLatticeReport rep =
        mukherjea_lattice(m, c.limits.window, n_lattice, decay_eps, c.limits.support_cap);
    ReportRecord r = base("fixture", "shifted-walk");
    r.digest = digest_of(measure_to_json(m));
    push_residuals(r, rep.residuals);
    r.verdict = rep.consistent && !rep.compact && rep.decay ? Verdict::Pass : Verdict::Fail;
    r.artifacts_json = lattice_artifacts(m);
    out.push_back(std::move(r));
  }

  // Random three-atom walks with bounded laziness: variance stays >= 0.8,
  // so the windowed Cesaro sup at n=2048 sits well under 0.05.
  const int draws = std::min(c.draws_per_group, 8);
  for (int i = 0; i < draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "lattice/draw", i);
    Rng rng(seed);
    const long long a = 1 + static_cast<long long>(rng.below(4));
    const long long b = 1 + static_cast<long long>(rng.below(4));
    const double lazy = 0.2 * rng.uniform();
    const double w1 = (1.0 - lazy) * (0.35 + 0.3 * rng.uniform());
    const double w2 = 1.0 - lazy - w1;
    const ComplexMeasure m = ComplexMeasure::lattice_from_atoms(
        {{0, cplx{lazy, 0.0}}, {-a, cplx{w1, 0.0}}, {b, cplx{w2, 0.0}}},
        LatticeGroup{c.limits.window});
    const MukherjeaLatticeReport rep =
        mukherjea_lattice(m, c.limits.window, n_lattice, decay_eps, c.limits.support_cap);
    ReportRecord r = base("draw", pad_index(i));
    r.seed_text = std::to_string(seed);
    push_residuals(r, rep.residuals);
    r.verdict = rep.consistent && !rep.compact ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = lattice_artifacts(m);
    out.push_back(std::move(r));
  }

  {
    // Cesaro detector on Z: delta_0 is an exact idempotent limit.
    const ComplexMeasure m = ComplexMeasure::lattice_delta(0, LatticeGroup{c.limits.window});
    const CesaroTrace trace = cesaro_limit(m, c.cesaro_options());
    ReportRecord r = base("fixture", "delta0-cesaro");
    r.digest = digest_of(measure_to_json(m));
    r.verdict = trace.verdict == CesaroTrace::Verdict::ConvergedTo ? Verdict::Pass : Verdict::Fail;
    r.artifacts_json = measure_artifacts(c, "cesaro", m);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// dual suite
// ---------------------------------------------------------------------------

DualFunction constructed_dual(const GroupContext& ctx, Rng& rng, int kind,
                              const std::shared_ptr<const DualGroup>& dual) {
  const GroupTable& g = *ctx.g;
  const int n = g.order();

  auto full_char_values = [&](const CharacterMap& chi) {
    std::vector<cplx> values(n);
    for (int t = 0; t < n; ++t) values[t] = chi.at(t);
    return values;
  };

  switch (kind % 4) {
    case 0: {
      const CharacterMap& chi = ctx.full_characters[rng.below(ctx.full_characters.size())];
      return make_dual(ctx.g, full_char_values(chi));
    }
    case 1: {
      // chi * indicator of a subgroup K: positive definite, Z = K n ker chi.
      const Subgroup& k = ctx.subgroups[rng.below(ctx.subgroups.size())];
      const CharacterMap& chi = ctx.full_characters[rng.below(ctx.full_characters.size())];
      std::vector<cplx> values(n, cplx{0.0, 0.0});
      for (int t : k.elements) values[t] = chi.at(t);
      return make_dual(ctx.g, values);
    }
    case 2: {
      // Convex blend of two subgroup indicators twisted by one character.
      const Subgroup& k1 = ctx.subgroups[rng.below(ctx.subgroups.size())];
      const Subgroup& k2 = ctx.subgroups[rng.below(ctx.subgroups.size())];
      const CharacterMap& chi = ctx.full_characters[rng.below(ctx.full_characters.size())];
      const double alpha = 0.2 + 0.6 * rng.uniform();
      std::vector<cplx> values(n, cplx{0.0, 0.0});
      for (int t : k1.elements) values[t] += alpha * chi.at(t);
      for (int t : k2.elements) values[t] += (1.0 - alpha) * chi.at(t);
      return make_dual(ctx.g, values);
    }
    default: {
      if (dual) {
        // Abelian: modulated transform of a probability on a dual subgroup;
        // the Z set is a genuine coset s0 H.
        const auto dual_subgroups = all_subgroups(dual->group);
        const Subgroup& d = dual_subgroups[rng.below(dual_subgroups.size())];
        std::vector<cplx> nu(n, cplx{0.0, 0.0});
        double mass = 0.0;
        for (int chi : d.elements) {
          const double w = rng.uniform(0.05, 1.0);
          nu[chi] = w;
          mass += w;
        }
        const int s0 = static_cast<int>(rng.below(n));
        std::vector<cplx> values(n, cplx{0.0, 0.0});
        for (int t = 0; t < n; ++t)
          for (int chi = 0; chi < n; ++chi)
            values[t] += (nu[chi] / mass) * dual->pairing(chi, s0) *
                         std::conj(dual->pairing(chi, t));
        return make_dual(ctx.g, values);
      }
      // Non-abelian: translate of chi * 1_K; contractive by construction but
      // carries no certificate (flagged Unverified).
      const Subgroup& k = ctx.subgroups[rng.below(ctx.subgroups.size())];
      const CharacterMap& chi = ctx.full_characters[rng.below(ctx.full_characters.size())];
      const int s0 = static_cast<int>(rng.below(n));
      std::vector<cplx> values(n, cplx{0.0, 0.0});
      for (int t = 0; t < n; ++t) {
        const int shifted = g.mul(g.inv(s0), t);
        if (k.contains(shifted)) values[t] = chi.at(shifted);
      }
      return make_dual(ctx.g, values);
    }
  }
}

std::vector<ReportRecord> run_dual_suite(const ScenarioConfig& c, const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "dual";
    r.case_id = "dual/" + ctx.spec + "/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = ctx.spec;
    return r;
  };

  std::shared_ptr<const DualGroup> dual;
  if (ctx.g->abelian()) dual = std::make_shared<DualGroup>(dual_group(ctx.g));

  for (int i = 0; i < c.draws_per_group; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "dual/draw/" + ctx.spec, i);
    Rng rng(seed);
    const DualFunction d = constructed_dual(ctx, rng, i, dual);
    const VnFixedReport rep = vn_fixed_space(d, c.tolerances.z_tol);
    ReportRecord r = base("draw", pad_index(i));
    r.seed_text = std::to_string(seed);
    r.dim_fix = rep.fixed.dim();
    push_residuals(r, rep.z.residuals);
    // Constructions are contractive by design, so the coset law and the
    // structural match are both required, certificate or not.
    bool ok = rep.structural_match &&
              rep.fixed.dim() == static_cast<int>(rep.z.z_set.size());
    if (!rep.z.z_set.empty()) ok = ok && rep.z.is_coset;
    if (rep.z.nondegenerate_checked && rep.z.nondegenerate)
      ok = ok && rep.z.nondeg_implies_trivial;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = dual_artifacts(c, "vn", d);
    out.push_back(std::move(r));
  }

  // Multiplicative-domain shadow on positive-definite draws with a
  // unimodular value.
  const int md_draws = std::min(c.draws_per_group, 64);
  for (int i = 0; i < md_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "dual/multdomain/" + ctx.spec, i);
    Rng rng(seed);
    DualFunction d = [&] {
      if (dual) {
        // Probability on {chi : pairing(chi, t0) = z} makes |omega(t0)| = 1.
        const int n = ctx.g->order();
        const int t0 = static_cast<int>(rng.below(n));
        std::vector<int> aligned;
        const cplx z = dual->pairing(static_cast<int>(rng.below(n)), t0);
        for (int chi = 0; chi < n; ++chi)
          if (std::abs(dual->pairing(chi, t0) - z) < 1e-12) aligned.push_back(chi);
        std::vector<cplx> nu(n, cplx{0.0, 0.0});
        double mass = 0.0;
        for (int chi : aligned) {
          const double w = rng.uniform(0.05, 1.0);
          nu[chi] = w;
          mass += w;
        }
        std::vector<cplx> values(n, cplx{0.0, 0.0});
        for (int t = 0; t < n; ++t)
          for (int chi : aligned)
            values[t] += (nu[chi] / mass) * std::conj(dual->pairing(chi, t));
        return make_dual(ctx.g, values);
      }
      return constructed_dual(ctx, rng, 1, nullptr);  // chi * 1_K is PSD
    }();
    ReportRecord r = base("multdomain", pad_index(i));
    r.seed_text = std::to_string(seed);
    double residual = 0.0;
    bool found_unimodular = false;
    if (d.positive_definite()) {
      const GroupTable& g = *ctx.g;
      for (int t0 = 0; t0 < g.order(); ++t0) {
        if (std::abs(std::abs(d.at(t0)) - 1.0) > 1e-12) continue;
        found_unimodular = true;
        for (int s = 0; s < g.order(); ++s)
          residual = std::max(residual, std::abs(d.at(g.mul(s, t0)) - d.at(s) * d.at(t0)));
      }
    }
    r.residuals.emplace_back("mult_domain", residual);
    r.verdict = d.positive_definite() && found_unimodular && residual <= 1e-8
                    ? Verdict::Pass
                    : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = dual_artifacts(c, "multdomain", d);
    out.push_back(std::move(r));
  }

  if (dual) {
    // Fourier round trip and pairing unitarity.
    const int ft_draws = std::min(c.draws_per_group, 64);
    for (int i = 0; i < ft_draws; ++i) {
      const std::uint64_t seed = mix_seed(c.seed, "dual/fourier/" + ctx.spec, i);
      Rng rng(seed);
      const ComplexMeasure m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, i));
      const std::vector<cplx> hat = fourier_transform(m, *dual);
      ComplexMeasure back = inverse_fourier(ctx.g, hat, *dual);
      back -= m;
      const double residual = tv_norm(back);
      ReportRecord r = base("fourier", pad_index(i));
      r.seed_text = std::to_string(seed);
      r.residuals.emplace_back("round_trip", residual);
      r.verdict = residual <= 1e-12 ? Verdict::Pass : Verdict::Fail;
      r.digest = digest_of(measure_to_json(m));
      r.artifacts_json = measure_artifacts(c, "fourier", m);
      out.push_back(std::move(r));
    }
    {
      const int n = ctx.g->order();
      const Eigen::MatrixXcd p = dual->pairing;
      const double residual =
          (p * p.adjoint() - static_cast<double>(n) * Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff();
      ReportRecord r = base("pairing-unitary", "");
      r.residuals.emplace_back("unitarity", residual);
      r.verdict = residual <= 1e-10 ? Verdict::Pass : Verdict::Fail;
      r.artifacts_json =
          "{\"check\":\"pairing\",\"group\":\"" + json_escape(ctx.spec) + "\"}";
      out.push_back(std::move(r));
    }
    // Characters are positive definite with kernel z-sets anchored at e.
    for (std::size_t ci = 0; ci < ctx.full_characters.size(); ++ci) {
      const CharacterMap& chi = ctx.full_characters[ci];
      std::vector<cplx> values(ctx.g->order());
      for (int t = 0; t < ctx.g->order(); ++t) values[t] = chi.at(t);
      const DualFunction d = make_dual(ctx.g, values);
      const ZSetReport z = z_set(d, c.tolerances.z_tol);
      std::vector<int> kernel;
      for (int t = 0; t < ctx.g->order(); ++t)
        if (std::abs(chi.at(t) - cplx{1.0, 0.0}) <= 1e-12) kernel.push_back(t);
      ReportRecord r = base("character", "chi" + std::to_string(ci));
      bool ok = d.positive_definite() && z.z_set == kernel && z.is_coset &&
                z.rep == ctx.g->identity();
      r.verdict = ok ? Verdict::Pass : Verdict::Fail;
      r.digest = digest_of(dual_to_json(d));
      r.artifacts_json = dual_artifacts(c, "vn", d);
      out.push_back(std::move(r));
    }
  }

  // Non-degenerate positive-definite draws have trivial Z sets.
  const int nd_draws = std::min(c.draws_per_group, 32);
  for (int i = 0; i < nd_draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "dual/nondeg/" + ctx.spec, i);
    Rng rng(seed);
    DualFunction d = [&] {
      const int n = ctx.g->order();
      if (dual) {
        std::vector<cplx> nu(n);
        double mass = 0.0;
        for (int chi = 0; chi < n; ++chi) {
          const double w = rng.uniform(0.05, 1.0);
          nu[chi] = w;
          mass += w;
        }
        std::vector<cplx> values(n, cplx{0.0, 0.0});
        for (int t = 0; t < n; ++t)
          for (int chi = 0; chi < n; ++chi)
            values[t] += (nu[chi] / mass) * std::conj(dual->pairing(chi, t));
        return make_dual(ctx.g, values);
      }
      // Autocorrelation of a random unit vector.
      Eigen::VectorXcd xi(n);
      for (int t = 0; t < n; ++t)
        xi(t) = std::polar(rng.uniform(0.2, 1.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
      xi /= xi.norm();
      std::vector<cplx> values(n, cplx{0.0, 0.0});
      const GroupTable& g = *ctx.g;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) values[s] += xi(g.mul(g.inv(s), t)) * std::conj(xi(t));
      return make_dual(ctx.g, values);
    }();
    const ZSetReport z = z_set(d, c.tolerances.z_tol);
    ReportRecord r = base("nondeg", pad_index(i));
    r.seed_text = std::to_string(seed);
    bool ok = d.positive_definite();
    if (ok && z.nondegenerate_checked && z.nondegenerate) ok = z.nondeg_implies_trivial;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = dual_artifacts(c, "vn", d);
    out.push_back(std::move(r));
  }

  if (ctx.spec == "cyclic:6") {
    // omega(n) = e^{2 pi i n / 3}: Z = {0, 3}, VN fixed space spanned by
    // lambda(0), lambda(3).
    std::vector<cplx> values(6);
    for (int t = 0; t < 6; ++t)
      values[t] = std::polar(1.0, 2.0 * std::numbers::pi * (2.0 * t) / 6.0);
    const DualFunction d = make_dual(ctx.g, values);
    const VnFixedReport rep = vn_fixed_space(d, c.tolerances.z_tol);
    ReportRecord r = base("fixture", "z6-char");
    r.dim_fix = rep.fixed.dim();
    const bool ok = d.positive_definite() && rep.z.z_set == std::vector<int>{0, 3} &&
                    rep.fixed_indices == std::vector<int>{0, 3} && rep.fixed.dim() == 2 &&
                    rep.structural_match;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = dual_artifacts(c, "vn", d);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// abelian_prop suite
// ---------------------------------------------------------------------------

std::vector<ReportRecord> run_abelian_prop_suite(const ScenarioConfig& c, const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  if (!ctx.g->abelian()) return out;
  auto base = [&](const std::string& idx) {
    ReportRecord r;
    r.suite = "abelian_prop";
    r.case_id = "abelian_prop/" + ctx.spec + "/draw/" + idx;
    r.group = ctx.spec;
    return r;
  };

  for (int i = 0; i < c.draws_per_group; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "abelian_prop/" + ctx.spec, i);
    Rng rng(seed);
    ComplexMeasure m;
    if (i % 2 == 0) {
      m = random_contractive(ctx.g, rng.next(), draw_profile(ctx, rng, 0));
    } else {
      // Character-phased unit measure: the nonempty side of the iff.
      DrawProfile profile;
      profile.kind = MeasureProfile::CharacterTwisted;
      profile.density = 0.3 + 0.5 * rng.uniform();
      profile.twist_subgroup = full_subgroup(ctx.g);
      profile.twist_character = ctx.full_characters[rng.below(ctx.full_characters.size())];
      m = random_contractive(ctx.g, rng.next(), profile);
    }
    const AbelianPropReport rep = abelian_prop_check(m, c.tolerances.z_tol);
    ReportRecord r = base(pad_index(i));
    r.seed_text = std::to_string(seed);
    push_residuals(r, rep.residuals);
    bool ok = rep.iff_holds;
    if (rep.coset_checked) ok = ok && rep.coset_match;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(measure_to_json(m));
    r.artifacts_json = measure_artifacts(c, "abelian_prop", m);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// mukherjea_dual suite
// ---------------------------------------------------------------------------

std::string mdual_artifacts(const ScenarioConfig& c, const DualFunction& d,
                            const std::vector<ComplexMeasure>& fns, long long n_max) {
  std::ostringstream extra;
  extra << "\"n_max\":" << n_max << ",\"test_fns\":[";
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (i) extra << ',';
    extra << measure_to_json(fns[i]);
  }
  extra << ']';
  return dual_artifacts(c, "mdual", d, extra.str());
}

std::vector<ReportRecord> run_mukherjea_dual_z(const ScenarioConfig& c) {
  std::vector<ReportRecord> out;
  auto base = [&](const std::string& kind, const std::string& idx) {
    ReportRecord r;
    r.suite = "mukherjea_dual";
    r.case_id = "mukherjea_dual/Z/" + kind + (idx.empty() ? "" : "/" + idx);
    r.group = "Z";
    return r;
  };
  const double golden = 2.0 * std::numbers::pi * ((std::sqrt(5.0) - 1.0) / 2.0);
  const long long n_max = c.limits.n_max;
  const LatticeGroup z{c.limits.window};

  auto delta_fns = [&](const std::vector<long long>& points) {
    std::vector<ComplexMeasure> fns;
    for (long long m : points) fns.push_back(ComplexMeasure::lattice_delta(m, z));
    return fns;
  };

  auto run_case = [&](const std::string& name, cplx coeff, double theta,
                      const std::vector<long long>& points, bool expect_z_nonempty) {
    AtomicToralMeasure toral;
    toral.atoms.push_back({coeff, theta});
    const DualFunction d = make_dual_lattice(toral, c.limits.window);
    const auto fns = delta_fns(points);
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, n_max, 1e-2);
    ReportRecord r = base("fixture", name);
    push_residuals(r, rep.residuals);
    double agreement = 0.0;
    for (const auto& cs : rep.cases) agreement = std::max(agreement, cs.agreement);
    r.residuals.emplace_back("closed_form_agreement", agreement);
    bool ok = rep.consistent && agreement <= 1e-10 && rep.z_nonempty == expect_z_nonempty;
    if (!rep.z_nonempty) ok = ok && rep.max_cesaro_off_z <= 1e-2;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = mdual_artifacts(c, d, fns, n_max);
    out.push_back(std::move(r));
  };

  // Golden rotation with c = 1: Z = {0}; the delta_0 pairing stays at 1
  // while every off-Z pairing decays geometrically.
  run_case("golden-c1", cplx{1.0, 0.0}, golden, {0, 1, -1, 2, 5, 13}, true);
  // c != 1 kills Z entirely: every pairing Cesaro-vanishes.
  run_case("golden-cphase", std::polar(1.0, 1.0), golden, {0, 1, -1, 2, 5, 13}, false);
  run_case("minus-const", cplx{-1.0, 0.0}, 0.0, {0, 1, -1, 2}, false);

  const int draws = std::min(c.draws_per_group, 32);
  for (int i = 0; i < draws; ++i) {
    const std::uint64_t seed = mix_seed(c.seed, "mukherjea_dual/z-draw", i);
    Rng rng(seed);
    // Keep |1 - c e^{i m theta}| bounded below on the test set so the
    // geometric bound certifies decay at this n_max.
    double theta = 0.0, phase = 0.0;
    const std::vector<long long> points = {0, 1, -1, 2, -2};
    bool usable = false;
    for (int attempt = 0; attempt < 200 && !usable; ++attempt) {
      theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      phase = rng.uniform(0.1, 2.0 * std::numbers::pi - 0.1);
      usable = true;
      for (long long m : points) {
        const cplx v = std::polar(1.0, phase + static_cast<double>(m) * theta);
        if (std::abs(v - cplx{1.0, 0.0}) < 0.05) usable = false;
      }
    }
    AtomicToralMeasure toral;
    toral.atoms.push_back({std::polar(1.0, phase), theta});
    const DualFunction d = make_dual_lattice(toral, c.limits.window);
    const auto fns = delta_fns(points);
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, n_max, 1e-2);
    ReportRecord r = base("draw", pad_index(i));
    r.seed_text = std::to_string(seed);
    push_residuals(r, rep.residuals);
    double agreement = 0.0;
    for (const auto& cs : rep.cases) agreement = std::max(agreement, cs.agreement);
    r.residuals.emplace_back("closed_form_agreement", agreement);
    const bool ok = usable && rep.consistent && agreement <= 1e-10 &&
                    rep.max_cesaro_off_z <= 1e-2;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = mdual_artifacts(c, d, fns, n_max);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ReportRecord> run_mukherjea_dual_group(const ScenarioConfig& c,
                                                   const GroupContext& ctx) {
  std::vector<ReportRecord> out;
  if (!ctx.g->abelian()) return out;
  auto base = [&](const std::string& idx) {
    ReportRecord r;
    r.suite = "mukherjea_dual";
    r.case_id = "mukherjea_dual/" + ctx.spec + "/char/" + idx;
    r.group = ctx.spec;
    return r;
  };

  // Characters on finite carriers exercise the contrapositive: nonempty Z
  // keeps pairings from vanishing.
  for (std::size_t ci = 0; ci < ctx.full_characters.size(); ++ci) {
    const CharacterMap& chi = ctx.full_characters[ci];
    std::vector<cplx> values(ctx.g->order());
    for (int t = 0; t < ctx.g->order(); ++t) values[t] = chi.at(t);
    const DualFunction d = make_dual(ctx.g, values);

    std::vector<ComplexMeasure> fns;
    for (int t = 0; t < ctx.g->order(); ++t) fns.push_back(ComplexMeasure::delta(ctx.g, t));
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, c.limits.n_max, 1e-2);
    ReportRecord r = base("chi" + std::to_string(ci));
    push_residuals(r, rep.residuals);
    const bool ok = rep.z_nonempty && rep.consistent && rep.min_cesaro_on_z >= 1.0 - 1e-12;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.digest = digest_of(dual_to_json(d));
    r.artifacts_json = mdual_artifacts(c, d, fns, c.limits.n_max);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<ReportRecord> run_suites(const ScenarioConfig& config) {
  std::vector<std::function<std::vector<ReportRecord>()>> tasks;

  const auto want = [&](const std::string& name) {
    return std::find(config.suites.begin(), config.suites.end(), name) != config.suites.end();
  };

  for (const std::string& spec : config.groups) {
    if (want("measure"))
      tasks.push_back([&, spec] { return run_measure_suite(config, make_context(spec)); });
    if (want("fixedpoint"))
      tasks.push_back([&, spec] { return run_fixedpoint_suite(config, make_context(spec)); });
    if (want("ideals"))
      tasks.push_back([&, spec] { return run_ideals_suite(config, make_context(spec)); });
    if (want("lp"))
      tasks.push_back([&, spec] { return run_lp_suite(config, make_context(spec)); });
    if (want("dual"))
      tasks.push_back([&, spec] { return run_dual_suite(config, make_context(spec)); });
    if (want("abelian_prop"))
      tasks.push_back([&, spec] { return run_abelian_prop_suite(config, make_context(spec)); });
    if (want("mukherjea_dual"))
      tasks.push_back([&, spec] { return run_mukherjea_dual_group(config, make_context(spec)); });
  }
  if (want("lattice")) tasks.push_back([&] { return run_lattice_suite(config); });
  if (want("mukherjea_dual")) tasks.push_back([&] { return run_mukherjea_dual_z(config); });

  // Bounded worker pool; results keyed by task index so the merge order is
  // deterministic regardless of completion order.
  std::counting_semaphore<64> slots(8);
  std::vector<std::future<std::vector<ReportRecord>>> futures;
  futures.reserve(tasks.size());
  for (auto& task : tasks) {
    futures.push_back(std::async(std::launch::async, [&slots, task] {
      slots.acquire();
      auto records = task();
      slots.release();
      return records;
    }));
  }

  std::vector<ReportRecord> all;
  for (auto& f : futures) {
    auto records = f.get();
    all.insert(all.end(), std::make_move_iterator(records.begin()),
               std::make_move_iterator(records.end()));
  }
  std::sort(all.begin(), all.end(), [](const ReportRecord& a, const ReportRecord& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.case_id < b.case_id;
  });
  return all;
}

}  // namespace convfix

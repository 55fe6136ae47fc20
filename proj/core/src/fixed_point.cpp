#include "convfix/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace convfix {

Eigen::MatrixXcd operator_matrix(const ComplexMeasure& omega, Convention convention) {
  if (omega.is_lattice()) throw Error("operator_matrix expects a finite carrier");
  const GroupTable& g = *omega.group();
  const int n = g.order();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    const cplx c = omega.at(s);
    if (c == cplx{0.0, 0.0}) continue;
    for (int t = 0; t < n; ++t) {
      const int target = convention == Convention::Left ? g.mul(s, t) : g.mul(t, s);
      m(t, target) += c;  // (Lf)(t) picks up f(s t); (Rf)(t) picks up f(t s)
    }
  }
  return m;
}

ComplexMeasure reflect(const ComplexMeasure& omega) {
  if (omega.is_lattice()) {
    std::vector<std::pair<long long, cplx>> atoms;
    for (const auto& [n, c] : omega.atoms()) atoms.emplace_back(-n, c);
    return ComplexMeasure::lattice_from_atoms(atoms, omega.lattice());
  }
  const GroupTable& g = *omega.group();
  std::vector<cplx> coeffs(g.order());
  for (int x = 0; x < g.order(); ++x) coeffs[g.inv(x)] = omega.at(x);
  return ComplexMeasure::from_coeffs(omega.group(), std::move(coeffs));
}

Eigen::MatrixXcd lambda_matrix(const ComplexMeasure& nu) {
  return operator_matrix(reflect(nu), Convention::Left);
}

Subspace fixed_subspace(const ComplexMeasure& omega, double tol, double* margin) {
  const Eigen::MatrixXcd l = operator_matrix(omega, Convention::Left);
  const int n = static_cast<int>(l.rows());
  return null_space(l - Eigen::MatrixXcd::Identity(n, n), tol, margin);
}

Eigen::VectorXcd character_extension_vector(const GroupPtr& g, const Subgroup& h,
                                            const CharacterMap& chi, int rep_choice) {
  const auto cosets = right_cosets(*g, h);
  Eigen::VectorXcd c(g->order());
  int block = 0;
  for (const auto& coset : cosets) {
    const int rep = coset.front();
    // Free per-coset anchor; any unimodular choice yields the same
    // transported subspace.
    const cplx anchor = std::polar(1.0, 0.37 * rep_choice * (1.0 + block));
    for (int s : h.elements) c(g->mul(s, rep)) = std::conj(chi.at(s)) * anchor;
    ++block;
  }
  return c;
}

Subspace predicted_fixed_space(const GroupPtr& g, const Subgroup& h, const CharacterMap& chi) {
  const auto cosets = right_cosets(*g, h);
  const double norm = std::sqrt(static_cast<double>(h.elements.size()));
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(g->order(), static_cast<int>(cosets.size()));
  for (std::size_t b = 0; b < cosets.size(); ++b) {
    const int rep = cosets[b].front();
    for (int s : h.elements)
      basis(g->mul(s, rep), static_cast<int>(b)) = std::conj(chi.at(s)) / norm;
  }
  Subspace out;
  out.basis = std::move(basis);
  return out;
}

ExtractResult extract_character(const ComplexMeasure& omega) {
  if (omega.is_lattice()) throw Error("extract_character expects a finite carrier");
  const std::vector<int> supp = omega.support();
  if (supp.empty()) throw Error("extract_character expects a non-zero measure");
  const std::map<int, cplx> phases = polar_phase(omega);
  ExtendResult ext = extend_character(omega.group(), supp, phases, 1e-9);
  if (std::holds_alternative<CharacterConflict>(ext))
    return NoCharacter{std::get<CharacterConflict>(std::move(ext))};
  return std::get<CharacterMap>(std::move(ext));
}

FixedPointReport verify_character_factorization(const ComplexMeasure& omega, double tol) {
  if (omega.is_lattice()) throw Error("verify_character_factorization expects a finite carrier");
  if (tv_norm(omega) > 1.0 + tol) throw Error("verify_character_factorization expects a contractive measure");

  FixedPointReport report;
  const double rank_tol = 1e-10;
  double margin = 0.0;
  const Subspace fix = fixed_subspace(omega, rank_tol, &margin);
  report.dim_fix = fix.dim();
  // Singular values within two decades of the rank cutoff make the
  // dimension call fragile; surface them instead of resolving silently.
  if (margin < 2.0) report.residuals.emplace_back("rank_margin_decades", margin);

  if (tv_norm(omega) == 0.0) {
    // The zero measure has L = 0 and no fixed points; nothing further.
    report.ok = report.dim_fix == 0;
    return report;
  }

  ExtractResult ext = extract_character(omega);
  const bool has_char = std::holds_alternative<CharacterMap>(ext);

  if (report.dim_fix == 0) {
    // No fixed points: nothing is promised, but a character may still exist
    // (e.g. tv_norm < 1). Record and succeed.
    if (!has_char) report.conflict = std::get<NoCharacter>(ext).conflict;
    else report.character = std::get<CharacterMap>(std::move(ext));
    report.ok = true;
    return report;
  }

  // Non-zero fixed points force the character factorisation.
  if (!has_char) {
    report.conflict = std::get<NoCharacter>(ext).conflict;
    report.ok = false;
    return report;
  }
  CharacterMap chi = std::get<CharacterMap>(std::move(ext));
  const Subgroup& h = chi.domain();  // G_{|omega|}

  double factor_residual = 0.0;
  const ComplexMeasure abs = absolute_value(omega);
  for (int s : omega.support())
    factor_residual = std::max(factor_residual, std::abs(omega.at(s) - chi.at(s) * abs.at(s)));
  report.residuals.emplace_back("character_factor", factor_residual);

  const Subspace fix_abs = fixed_subspace(abs, rank_tol);
  const Eigen::VectorXcd twist = character_extension_vector(omega.group(), h, chi);
  const Subspace transported = pointwise_scale(fix_abs, twist);
  const SubspaceComparison transport = subspace_equal(fix, transported, tol);
  report.residuals.emplace_back("fix_transport_angle", transport.angle);
  report.factorization_ok = transport.equal && factor_residual <= tol;

  const bool nondeg = adaptedness(omega).nondegenerate;
  if (omega.group()->abelian() || nondeg) {
    report.structural_checked = true;
    const Subspace predicted = predicted_fixed_space(omega.group(), h, chi);
    const SubspaceComparison structural = subspace_equal(fix, predicted, tol);
    report.residuals.emplace_back("structural_angle", structural.angle);
    report.structural_match = structural.equal;
  }

  report.character = std::move(chi);
  report.ok = report.factorization_ok && (!report.structural_checked || report.structural_match);
  return report;
}

CesaroProjectionReport cesaro_projection_check(const CesaroTrace& trace, double tol) {
  CesaroProjectionReport report;
  report.verdict = trace.verdict;
  if (trace.verdict == CesaroTrace::Verdict::Undecided)
    throw Error("cesaro_projection_check needs a decided trace");
  if (trace.measure.is_lattice())
    throw Error("cesaro_projection_check expects a finite carrier");

  const double rank_tol = 1e-10;
  const Subspace fix = fixed_subspace(trace.measure, rank_tol);
  report.dim_fix = fix.dim();

  if (trace.verdict == CesaroTrace::Verdict::ConvergedToZero) {
    report.ok = fix.dim() == 0;
    report.residuals.emplace_back("dim_fix", static_cast<double>(fix.dim()));
    return report;
  }

  const ComplexMeasure& limit = *trace.limit;
  ComplexMeasure idem = convolve(limit, limit);
  idem -= limit;
  report.residuals.emplace_back("idempotency", tv_norm(idem));

  const Eigen::MatrixXcd lt = operator_matrix(limit, Convention::Left);
  const double proj_residual = (lt * lt - lt).cwiseAbs().maxCoeff();
  report.residuals.emplace_back("projection", proj_residual);

  const Subspace range = column_space(lt, rank_tol);
  const SubspaceComparison range_vs_fix = subspace_equal(range, fix, tol);
  report.residuals.emplace_back("range_angle", range_vs_fix.angle);

  const Subspace fix_limit = fixed_subspace(limit, rank_tol);
  const SubspaceComparison fix_vs_fix = subspace_equal(fix_limit, fix, tol);
  report.residuals.emplace_back("fix_match_angle", fix_vs_fix.angle);

  report.ok = tv_norm(idem) <= 10.0 * tol && proj_residual <= 10.0 * tol && range_vs_fix.equal &&
              fix_vs_fix.equal;
  return report;
}

IdealReport ideal_I_omega(const ComplexMeasure& omega, double tol) {
  if (omega.is_lattice()) throw Error("ideal_I_omega expects a finite carrier");
  const GroupTable& g = *omega.group();
  const int n = g.order();

  // Columns delta_g - omega * delta_g; (omega * delta_g)(t) = omega(t g^{-1}).
  Eigen::MatrixXcd k(n, n);
  for (int col = 0; col < n; ++col)
    for (int t = 0; t < n; ++t)
      k(t, col) = (t == col ? cplx{1.0, 0.0} : cplx{0.0, 0.0}) - omega.at(g.mul(t, g.inv(col)));

  IdealReport report;
  double margin = 0.0;
  report.ideal = column_space(k, tol, &margin);
  report.dim_ideal = report.ideal.dim();
  if (margin < 2.0) report.residuals.emplace_back("rank_margin_decades", margin);

  const Subspace fix = fixed_subspace(omega, tol);
  report.dim_fix = fix.dim();
  report.rank_sum_exact = report.dim_ideal + report.dim_fix == n;
  report.residuals.emplace_back("rank_sum",
                                static_cast<double>(report.dim_ideal + report.dim_fix - n));

  // Pre-annihilator under the bilinear pairing <f, x> = sum f(g) x(g):
  // x annihilates I iff K^T x = 0.
  const Subspace annihilator = null_space(k.transpose(), tol);
  const SubspaceComparison ann = subspace_equal(annihilator, fix, 1e-8);
  report.annihilator_angle = ann.angle;
  report.residuals.emplace_back("annihilator_angle", ann.angle);

  // State case: I_omega sits inside the augmentation ideal ell^1_0.
  double mass_imag = 0.0, mass_dev = 0.0;
  bool nonneg = true;
  for (int s = 0; s < n; ++s) {
    mass_imag = std::max(mass_imag, std::abs(omega.at(s).imag()));
    if (omega.at(s).real() < -1e-14) nonneg = false;
  }
  double total = 0.0;
  for (int s = 0; s < n; ++s) total += omega.at(s).real();
  mass_dev = std::abs(total - 1.0);
  report.is_state = nonneg && mass_imag <= 1e-14 && mass_dev <= 1e-12;
  if (report.is_state) {
    double aug = 0.0;
    for (int c = 0; c < report.ideal.dim(); ++c)
      aug = std::max(aug, std::abs(report.ideal.basis.col(c).sum()));
    report.augmentation_residual = aug;
    report.residuals.emplace_back("augmentation", aug);
    report.equals_augmentation_ideal = report.dim_ideal == n - 1 && aug <= 1e-10;
  }
  return report;
}

LpReport lp_fixed_points(const ComplexMeasure& omega, double p, double tol) {
  if (p < 1.0) throw Error("lp_fixed_points requires p >= 1");
  if (omega.is_lattice())
    throw Error("lp_fixed_points expects a finite carrier; use lattice_windowed_cesaro_sup on Z");

  LpReport report;
  report.p = p;
  const double rank_tol = 1e-10;
  report.fixed = fixed_subspace(omega, rank_tol);
  report.adapted = adaptedness(omega).adapted;

  if (tv_norm(omega) == 0.0) return report;
  ExtractResult ext = extract_character(omega);
  report.character_found = std::holds_alternative<CharacterMap>(ext);
  if (!report.character_found) return report;
  const CharacterMap& chi = std::get<CharacterMap>(ext);

  // Conjugate character on the same domain.
  std::vector<cplx> conj_vals;
  conj_vals.reserve(chi.values().size());
  for (const cplx& v : chi.values()) conj_vals.push_back(std::conj(v));
  CharacterMap chi_bar(chi.domain(), std::move(conj_vals));

  // Ran lambda(conj(chi) m_H) with H = G_{|omega|}.
  ComplexMeasure idem = haar_on(chi.domain());
  std::vector<cplx> coeffs = idem.coeffs();
  for (int s : chi.domain().elements) coeffs[s] *= chi_bar.at(s);
  const ComplexMeasure chi_haar = ComplexMeasure::from_coeffs(omega.group(), std::move(coeffs));
  const Subspace range = column_space(lambda_matrix(chi_haar), rank_tol);

  const SubspaceComparison cmp = subspace_equal(report.fixed, range, tol);
  report.range_match = cmp.equal;
  report.range_angle = cmp.angle;
  report.residuals.emplace_back("range_angle", cmp.angle);
  return report;
}

double lattice_windowed_cesaro_sup(const ComplexMeasure& omega, int window, long long n,
                                   long long support_cap) {
  if (!omega.is_lattice()) throw Error("lattice_windowed_cesaro_sup expects the Z carrier");
  const ComplexMeasure s = cesaro(omega, n, support_cap);
  return windowed_sup(s, window);
}

RepFixedReport representation_fixed_points(const std::vector<Eigen::MatrixXcd>& pi,
                                           const ComplexMeasure& omega, double tol) {
  if (omega.is_lattice()) throw Error("representation_fixed_points expects a finite carrier");
  const GroupTable& g = *omega.group();
  if (static_cast<int>(pi.size()) != g.order())
    throw Error("representation size does not match the group order");
  const long dim = pi.front().rows();
  for (const auto& m : pi)
    if (m.rows() != dim || m.cols() != dim) throw Error("representation matrices must be square");

  double hom_residual = 0.0;
  for (int a = 0; a < g.order(); ++a) {
    const double unit = (pi[a] * pi[a].adjoint() - Eigen::MatrixXcd::Identity(dim, dim))
                            .cwiseAbs()
                            .maxCoeff();
    hom_residual = std::max(hom_residual, unit);
    for (int b = 0; b < g.order(); ++b)
      hom_residual =
          std::max(hom_residual, (pi[a] * pi[b] - pi[g.mul(a, b)]).cwiseAbs().maxCoeff());
  }
  if (hom_residual > 1e-10)
    throw Error("representation_fixed_points: pi is not a unitary homomorphism");

  RepFixedReport report;
  report.residuals.emplace_back("homomorphism", hom_residual);

  Eigen::MatrixXcd pi_omega = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < g.order(); ++s) pi_omega += omega.at(s) * pi[s];

  const double rank_tol = 1e-10;
  report.fixed = null_space(pi_omega - Eigen::MatrixXcd::Identity(dim, dim), rank_tol);
  if (report.fixed.dim() == 0) {
    report.matched = true;  // nothing promised for a zero fixed space
    return report;
  }

  ExtractResult ext = extract_character(omega);
  report.character_found = std::holds_alternative<CharacterMap>(ext);
  if (!report.character_found) return report;
  const CharacterMap& chi = std::get<CharacterMap>(ext);

  std::vector<Eigen::MatrixXcd> constraints;
  for (int s : chi.domain().elements)
    constraints.push_back(pi[s] - std::conj(chi.at(s)) * Eigen::MatrixXcd::Identity(dim, dim));
  const Subspace eigenspace = stacked_null_space(constraints, rank_tol);

  const SubspaceComparison cmp = subspace_equal(report.fixed, eigenspace, tol);
  report.matched = cmp.equal;
  report.angle = cmp.angle;
  report.residuals.emplace_back("eigenspace_angle", cmp.angle);
  return report;
}

std::vector<Eigen::MatrixXcd> regular_representation(const GroupTable& g) {
  std::vector<Eigen::MatrixXcd> pi;
  pi.reserve(g.order());
  for (int s = 0; s < g.order(); ++s) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.order(), g.order());
    for (int t = 0; t < g.order(); ++t) m(g.mul(s, t), t) = 1.0;  // lambda(s) e_t = e_{st}
    pi.push_back(std::move(m));
  }
  return pi;
}

std::vector<Eigen::MatrixXcd> irrep_2d(const GroupTable& g) {
  const double pi_v = std::numbers::pi;
  std::vector<Eigen::MatrixXcd> out(g.order());

  auto rotation = [&](double angle) {
    Eigen::MatrixXcd m(2, 2);
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return m;
  };

  if (g.name() == "dihedral:4") {
    Eigen::MatrixXcd flip(2, 2);
    flip << 1, 0, 0, -1;
    for (int k = 0; k < 4; ++k) {
      out[k] = rotation(k * pi_v / 2.0);
      out[4 + k] = rotation(k * pi_v / 2.0) * flip;
    }
    return out;
  }
  if (g.name() == "quaternion8") {
    Eigen::MatrixXcd mi(2, 2), mj(2, 2);
    const cplx im{0.0, 1.0};
    mi << im, 0, 0, -im;
    mj << 0, -1, 1, 0;
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd mk = mi * mj;
    out[0] = one;
    out[1] = mi;
    out[2] = mj;
    out[3] = mk;
    for (int k = 0; k < 4; ++k) out[4 + k] = -out[k];
    return out;
  }
  if (g.name() == "symmetric:3") {
    // Natural permutation action restricted to the sum-zero plane.
    std::vector<std::vector<int>> perms;
    std::vector<int> p = {0, 1, 2};
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    Eigen::MatrixXcd basis(3, 2);
    basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), -1.0 / std::sqrt(2.0),
        1.0 / std::sqrt(6.0), 0.0, -2.0 / std::sqrt(6.0);
    for (int s = 0; s < 6; ++s) {
      Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(3, 3);
      for (int x = 0; x < 3; ++x) perm(perms[s][x], x) = 1.0;
      out[s] = basis.adjoint() * perm * basis;
    }
    return out;
  }
  throw Error("no 2-dimensional irrep fixture for " + g.name());
}

MukherjeaLatticeReport mukherjea_lattice(const ComplexMeasure& omega, int window, long long n_max,
                                         double eps, long long support_cap) {
  if (!omega.is_lattice()) throw Error("mukherjea_lattice expects the Z carrier");
  if (std::abs(tv_norm(omega) - 1.0) > 1e-12)
    throw Error("mukherjea_lattice expects a probability measure");
  for (const auto& [n, c] : omega.atoms())
    if (c.real() < -1e-14 || std::abs(c.imag()) > 1e-14)
      throw Error("mukherjea_lattice expects a probability measure");

  MukherjeaLatticeReport report;
  const std::vector<long long> supp = omega.lattice_support();
  report.compact = true;
  for (long long n : supp)
    if (n != 0) report.compact = false;  // G_omega = gcd Z, compact only when {0}

  ComplexMeasure power = omega;
  ComplexMeasure sum = omega;
  for (long long k = 2; k <= n_max; ++k) {
    power = convolve(power, omega, support_cap);
    sum += power;
  }
  ComplexMeasure s_n = sum;
  s_n *= cplx{1.0 / static_cast<double>(n_max), 0.0};

  report.iterate_sup = windowed_sup(power, window);
  report.cesaro_sup = windowed_sup(s_n, window);
  report.decay = report.iterate_sup <= eps && report.cesaro_sup <= eps;
  report.consistent = report.decay == !report.compact;
  report.residuals.emplace_back("iterate_sup", report.iterate_sup);
  report.residuals.emplace_back("cesaro_sup", report.cesaro_sup);
  return report;
}

ComplexMeasure ergodic_cesaro_limit(const ComplexMeasure& omega, double tol) {
  if (omega.is_lattice()) throw Error("ergodic_cesaro_limit expects a finite carrier");
  const GroupTable& g = *omega.group();
  const int n = g.order();

  // T mu = mu * omega: T[t][s] = omega(s^{-1} t).
  Eigen::MatrixXcd t(n, n);
  for (int row = 0; row < n; ++row)
    for (int s = 0; s < n; ++s) t(row, s) = omega.at(g.mul(g.inv(s), row));
  const Eigen::MatrixXcd shifted = t - Eigen::MatrixXcd::Identity(n, n);

  const Subspace kernel = null_space(shifted, tol);
  const Subspace range = column_space(shifted, tol);
  if (kernel.dim() + range.dim() != n)
    throw Error("mean-ergodic decomposition ranks do not add up");
  if (kernel.dim() == 0) return ComplexMeasure::zero(omega.group());

  Eigen::MatrixXcd joint(n, n);
  joint.leftCols(kernel.dim()) = kernel.basis;
  joint.rightCols(range.dim()) = range.basis;
  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = omega.at(i);
  const Eigen::VectorXcd coeff = joint.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXcd projected = kernel.basis * coeff.head(kernel.dim());

  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = projected(i);
  return ComplexMeasure::from_coeffs(omega.group(), std::move(out));
}

EquivalenceReport equivalence_suite(const ComplexMeasure& omega, double tol) {
  if (omega.is_lattice()) throw Error("equivalence_suite expects a finite carrier");
  if (tv_norm(omega) > 1.0 + std::max(tol, 1e-12))
    throw Error("equivalence_suite expects a contractive measure");

  EquivalenceReport report;
  report.ergodic_limit = ergodic_cesaro_limit(omega, tol);
  const double limit_mass = tv_norm(report.ergodic_limit);
  report.residuals.emplace_back("limit_mass", limit_mass);

  report.cesaro_nonzero = limit_mass > 1e-8;
  report.limit_idempotent =
      report.cesaro_nonzero && is_idempotent(report.ergodic_limit, 1e-8);
  report.fixed_nonzero = fixed_subspace(omega, tol).dim() > 0;

  // (v): tau * omega = tau for some nonzero tau; measure-side kernel.
  const GroupTable& g = *omega.group();
  const int n = g.order();
  Eigen::MatrixXcd t(n, n);
  for (int row = 0; row < n; ++row)
    for (int s = 0; s < n; ++s) t(row, s) = omega.at(g.mul(g.inv(s), row));
  report.left_fixed_exists =
      null_space(t - Eigen::MatrixXcd::Identity(n, n), tol).dim() > 0;

  report.all_equal = report.cesaro_nonzero == report.limit_idempotent &&
                     report.cesaro_nonzero == report.fixed_nonzero &&
                     report.cesaro_nonzero == report.left_fixed_exists;
  return report;
}

}  // namespace convfix

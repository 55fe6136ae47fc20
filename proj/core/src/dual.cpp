#include "convfix/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace convfix {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

double AtomicToralMeasure::tv() const {
  double sum = 0.0;
  for (const Atom& a : atoms) sum += std::abs(a.coeff);
  return sum;
}

cplx AtomicToralMeasure::eval(long long n) const {
  cplx out{0.0, 0.0};
  for (const Atom& a : atoms) out += a.coeff * std::polar(1.0, static_cast<double>(n) * a.angle);
  return out;
}

void AtomicToralMeasure::normalize_angles() {
  std::map<double, cplx> acc;  // merge atoms whose angles agree to 1e-12
  for (const Atom& a : atoms) {
    double angle = std::fmod(a.angle, kTau);
    if (angle < 0) angle += kTau;
    bool found = false;
    for (auto& [key, coeff] : acc) {
      if (std::abs(key - angle) < 1e-12 || std::abs(std::abs(key - angle) - kTau) < 1e-12) {
        coeff += a.coeff;
        found = true;
        break;
      }
    }
    if (!found) acc[angle] = a.coeff;
  }
  atoms.clear();
  for (const auto& [angle, coeff] : acc)
    if (std::abs(coeff) > 1e-15) atoms.push_back(Atom{coeff, angle});
}

AtomicToralMeasure AtomicToralMeasure::power(int k) const {
  if (k < 1) throw Error("toral power requires k >= 1");
  AtomicToralMeasure acc = *this;
  acc.normalize_angles();
  AtomicToralMeasure result = acc;
  for (int i = 1; i < k; ++i) {
    AtomicToralMeasure next;
    for (const Atom& a : result.atoms)
      for (const Atom& b : acc.atoms) next.atoms.push_back(Atom{a.coeff * b.coeff, a.angle + b.angle});
    next.normalize_angles();
    result = std::move(next);
  }
  return result;
}

std::string certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::PositiveDefinite: return "positive-definite";
    case CertificateKind::AbelianTV: return "abelian-tv";
    case CertificateKind::AtomicToral: return "atomic-toral";
    case CertificateKind::Unverified: return "unverified";
  }
  return "unverified";
}

std::vector<cplx> fourier_transform(const ComplexMeasure& mu, const DualGroup& dual) {
  const int n = mu.group()->order();
  std::vector<cplx> out(n, cplx{0.0, 0.0});
  for (int chi = 0; chi < n; ++chi)
    for (int s = 0; s < n; ++s) out[chi] += std::conj(dual.pairing(chi, s)) * mu.at(s);
  return out;
}

ComplexMeasure inverse_fourier(const GroupPtr& g, const std::vector<cplx>& dual_values,
                               const DualGroup& dual) {
  const int n = g->order();
  std::vector<cplx> coeffs(n, cplx{0.0, 0.0});
  for (int s = 0; s < n; ++s) {
    for (int chi = 0; chi < n; ++chi) coeffs[s] += dual.pairing(chi, s) * dual_values[chi];
    coeffs[s] /= static_cast<double>(n);
  }
  return ComplexMeasure::from_coeffs(g, std::move(coeffs));
}

std::vector<cplx> dual_transform(const ComplexMeasure& nu_on_dual, const DualGroup& dual) {
  const int n = static_cast<int>(dual.pairing.cols());
  std::vector<cplx> out(n, cplx{0.0, 0.0});
  for (int s = 0; s < n; ++s)
    for (int chi = 0; chi < n; ++chi)
      out[s] += std::conj(dual.pairing(chi, s)) * nu_on_dual.at(chi);
  return out;
}

ComplexMeasure b_norm_measure(const GroupPtr& g, const std::vector<cplx>& values,
                              const DualGroup& dual) {
  const int n = g->order();
  std::vector<cplx> coeffs(n, cplx{0.0, 0.0});
  for (int chi = 0; chi < n; ++chi) {
    for (int s = 0; s < n; ++s) coeffs[chi] += dual.pairing(chi, s) * values[s];
    coeffs[chi] /= static_cast<double>(n);
  }
  return ComplexMeasure::from_coeffs(dual.group, std::move(coeffs));
}

DualFunction DualFunction::finite(GroupPtr g, std::vector<cplx> values) {
  if (values.size() != static_cast<std::size_t>(g->order()))
    throw Error("dual function values do not match the group order");
  DualFunction out;
  out.group_ = std::move(g);
  out.values_ = std::move(values);

  const GroupTable& grp = *out.group_;
  const int n = grp.order();

  // Gram matrix [omega(s^{-1} t)]; positive-definiteness by eigenvalue check.
  Eigen::MatrixXcd gram(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) gram(s, t) = out.values_[grp.mul(grp.inv(s), t)];
  out.gram_herm_residual_ = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  if (out.gram_herm_residual_ <= 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig((gram + gram.adjoint()) * 0.5);
    out.gram_min_eig_ = eig.eigenvalues().minCoeff();
    const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    out.psd_ = out.gram_min_eig_ >= -1e-10 * scale;
  } else {
    out.gram_min_eig_ = -1.0;
    out.psd_ = false;
  }

  if (grp.abelian()) {
    auto dual = std::make_shared<DualGroup>(dual_group(out.group_));
    out.tv_measure_ = b_norm_measure(out.group_, out.values_, *dual);
    out.dual_ = std::move(dual);
  }

  if (out.psd_) {
    out.cert_ = NormCertificate{CertificateKind::PositiveDefinite, out.values_[grp.identity()].real()};
  } else if (out.tv_measure_) {
    out.cert_ = NormCertificate{CertificateKind::AbelianTV, tv_norm(*out.tv_measure_)};
  } else {
    out.cert_ = NormCertificate{CertificateKind::Unverified, std::nullopt};
  }
  return out;
}

DualFunction DualFunction::lattice(AtomicToralMeasure toral, int window) {
  DualFunction out;
  toral.normalize_angles();
  out.window_ = window;
  out.toral_ = std::move(toral);
  out.cert_ = NormCertificate{CertificateKind::AtomicToral, out.toral_->tv()};
  return out;
}

DualFunction make_dual(GroupPtr g, std::vector<cplx> values) {
  return DualFunction::finite(std::move(g), std::move(values));
}

DualFunction make_dual_lattice(AtomicToralMeasure toral, int window) {
  return DualFunction::lattice(std::move(toral), window);
}

DualFunction pointwise_power(const DualFunction& omega, int k) {
  if (k < 1) throw Error("pointwise_power requires k >= 1");
  if (omega.is_lattice()) return DualFunction::lattice(omega.toral().power(k), omega.window());

  std::vector<cplx> values = omega.values();
  for (cplx& v : values) {
    cplx acc{1.0, 0.0};
    for (int i = 0; i < k; ++i) acc *= v;
    v = acc;
  }
  // Certificates are recomputed from scratch on the powered values: the
  // Gram eigencheck re-certifies positive definiteness (pointwise powers of
  // positive definite functions stay positive definite) and abelian carriers
  // recover the exact transform norm. Everything else lands on Unverified.
  return DualFunction::finite(omega.group(), std::move(values));
}

bool dual_nondegenerate_psd(const DualFunction& omega, double tol) {
  if (omega.is_lattice() || !omega.positive_definite()) return false;
  const GroupTable& g = *omega.group();
  const int n = g.order();

  // f lies in every ker[omega^k(s^{-1}t)] iff for each s the partial sums of
  // f over the level sets {t : omega(s^{-1}t) = v} vanish for every nonzero
  // value v (Vandermonde in k on the distinct values). One exact linear
  // system instead of the k-loop.
  std::vector<cplx> distinct;
  for (const cplx& v : omega.values()) {
    if (std::abs(v) <= 1e-12) continue;
    bool known = false;
    for (const cplx& w : distinct)
      if (std::abs(v - w) <= 1e-9) {
        known = true;
        break;
      }
    if (!known) distinct.push_back(v);
  }
  if (distinct.empty()) return false;  // omega vanishes off nothing

  Eigen::MatrixXcd constraints(n * static_cast<int>(distinct.size()), n);
  constraints.setZero();
  int row = 0;
  for (int s = 0; s < n; ++s)
    for (const cplx& v : distinct) {
      for (int t = 0; t < n; ++t)
        if (std::abs(omega.at(g.mul(g.inv(s), t)) - v) <= 1e-9) constraints(row, t) = 1.0;
      ++row;
    }
  return null_space(constraints, tol).dim() == 0;
}

ZSetReport z_set(const DualFunction& omega, double eps) {
  if (omega.is_lattice()) throw Error("z_set expects a finite carrier; see mukherjea_dual for Z");
  const GroupTable& g = *omega.group();
  ZSetReport report;

  report.flagged_unverified = omega.certificate().kind == CertificateKind::Unverified;
  report.contractive =
      omega.certificate().norm.has_value() && *omega.certificate().norm <= 1.0 + eps;

  double near = 1e300;
  for (int s = 0; s < g.order(); ++s) {
    const double dist = std::abs(omega.at(s) - cplx{1.0, 0.0});
    if (dist <= eps)
      report.z_set.push_back(s);
    else
      near = std::min(near, dist);
  }
  report.near_miss = near == 1e300 ? 0.0 : near;
  report.residuals.emplace_back("near_miss", report.near_miss);

  if (!report.z_set.empty()) {
    const int s0 = report.z_set.front();
    report.rep = s0;
    std::vector<int> h_elems;
    h_elems.reserve(report.z_set.size());
    for (int z : report.z_set) h_elems.push_back(g.mul(g.inv(s0), z));
    std::sort(h_elems.begin(), h_elems.end());

    Subgroup h{omega.group(), h_elems};
    bool subgroup_ok = h.contains(g.identity());
    for (int a : h_elems) {
      if (!subgroup_ok) break;
      if (!h.contains(g.inv(a))) subgroup_ok = false;
      for (int b : h_elems)
        if (!h.contains(g.mul(a, b))) {
          subgroup_ok = false;
          break;
        }
    }
    // Z = s0 H exactly by construction of h_elems; the content is that
    // h_elems is a subgroup.
    report.is_coset = subgroup_ok;
    if (subgroup_ok) report.subgroup = std::move(h);
  }

  if (omega.positive_definite()) {
    report.nondegenerate_checked = true;
    report.nondegenerate = dual_nondegenerate_psd(omega);
    if (report.nondegenerate) {
      report.nondeg_implies_trivial = true;
      for (int z : report.z_set)
        if (z != g.identity()) report.nondeg_implies_trivial = false;
    }
  }
  return report;
}

VnFixedReport vn_fixed_space(const DualFunction& omega, double eps) {
  if (omega.is_lattice()) throw Error("vn_fixed_space expects a finite carrier");
  const GroupTable& g = *omega.group();
  VnFixedReport report;
  report.z = z_set(omega, eps);

  // L_omega is diagonal in the lambda(g) coordinates, so the fixed space is
  // spanned exactly by the coordinates with omega(g) = 1.
  for (int s = 0; s < g.order(); ++s)
    if (std::abs(omega.at(s) - cplx{1.0, 0.0}) <= eps) report.fixed_indices.push_back(s);
  Eigen::MatrixXcd basis =
      Eigen::MatrixXcd::Zero(g.order(), static_cast<int>(report.fixed_indices.size()));
  for (std::size_t i = 0; i < report.fixed_indices.size(); ++i)
    basis(report.fixed_indices[i], static_cast<int>(i)) = 1.0;
  report.fixed.basis = std::move(basis);

  if (report.z.z_set.empty()) {
    report.structural_match = report.fixed_indices.empty();
    report.ok = report.structural_match;
  } else if (report.z.is_coset) {
    std::vector<int> predicted;
    for (int h : report.z.subgroup->elements) predicted.push_back(g.mul(*report.z.rep, h));
    std::sort(predicted.begin(), predicted.end());
    report.structural_match = predicted == report.fixed_indices;
    report.ok = report.structural_match;
  } else {
    // The coset law is only promised for contractive inputs.
    report.ok = !report.z.contractive;
  }
  return report;
}

namespace {

cplx geometric_cesaro(cplx z, long long n) {
  // (1/n) sum_{k=1..n} z^k
  if (std::abs(z - cplx{1.0, 0.0}) < 1e-14) return cplx{1.0, 0.0};
  cplx zn = std::pow(z, static_cast<double>(n));
  return z * (cplx{1.0, 0.0} - zn) / (static_cast<double>(n) * (cplx{1.0, 0.0} - z));
}

}  // namespace

MukherjeaDualReport mukherjea_dual(const DualFunction& omega,
                                   const std::vector<ComplexMeasure>& test_fns, long long n_max,
                                   double eps) {
  if (omega.certificate().norm && std::abs(*omega.certificate().norm - 1.0) > 1e-9)
    throw Error("mukherjea_dual expects a norm-one element of B(G)");
  MukherjeaDualReport report;

  // Value of omega at a test point and Z membership.
  auto omega_at = [&](long long m) {
    return omega.is_lattice() ? omega.at_lattice(m) : omega.at(static_cast<int>(m));
  };

  std::vector<long long> z_points;
  if (omega.is_lattice()) {
    for (long long m = -omega.window(); m <= omega.window(); ++m)
      if (std::abs(omega.at_lattice(m) - cplx{1.0, 0.0}) <= 1e-9) z_points.push_back(m);
  } else {
    for (int s = 0; s < omega.group()->order(); ++s)
      if (std::abs(omega.at(s) - cplx{1.0, 0.0}) <= 1e-9) z_points.push_back(s);
  }
  report.z_nonempty = !z_points.empty();

  double max_off = 0.0;
  double min_on = 1e300;
  int case_idx = 0;
  for (const ComplexMeasure& f : test_fns) {
    DualPairingCase c;
    c.test_fn = "f" + std::to_string(case_idx++);

    std::vector<std::pair<long long, cplx>> support;
    if (f.is_lattice()) {
      for (const auto& [m, v] : f.atoms()) support.emplace_back(m, v);
    } else {
      for (int s = 0; s < f.group()->order(); ++s)
        if (f.at(s) != cplx{0.0, 0.0}) support.emplace_back(s, f.at(s));
    }

    // Direct Cesaro pairing: (1/n) sum_k sum_m omega(m)^k f(m).
    cplx direct{0.0, 0.0}, closed{0.0, 0.0}, iterate{0.0, 0.0};
    for (const auto& [m, v] : support) {
      const cplx z = omega_at(m);
      cplx pow_acc{1.0, 0.0}, sum_acc{0.0, 0.0};
      for (long long k = 1; k <= n_max; ++k) {
        pow_acc *= z;
        sum_acc += pow_acc;
      }
      direct += v * sum_acc / static_cast<double>(n_max);
      iterate += v * pow_acc;
      closed += v * geometric_cesaro(z, n_max);
    }
    c.cesaro_direct = direct;
    c.iterate = iterate;
    c.cesaro_closed_form = closed;
    c.closed_form_valid = true;
    c.agreement = std::abs(direct - closed);

    bool touches_z = false;
    for (const auto& [m, v] : support)
      for (long long z : z_points)
        if (m == z && std::abs(v) > 0) touches_z = true;
    if (touches_z)
      min_on = std::min(min_on, std::abs(direct));
    else
      max_off = std::max(max_off, std::abs(direct));

    report.cases.push_back(std::move(c));
  }

  report.max_cesaro_off_z = max_off;
  report.min_cesaro_on_z = min_on == 1e300 ? 0.0 : min_on;
  report.residuals.emplace_back("max_off_z", max_off);
  report.residuals.emplace_back("min_on_z", report.min_cesaro_on_z);

  // Discrete-carrier shadow of the theorem: pairings that see Z stay away
  // from zero; when Z is empty (unimodular character structure) every
  // pairing must Cesaro-vanish.
  if (report.z_nonempty)
    report.consistent = min_on == 1e300 || report.min_cesaro_on_z > eps;
  else
    report.consistent = max_off <= eps && report.min_cesaro_on_z <= eps;
  return report;
}

AbelianPropReport abelian_prop_check(const ComplexMeasure& mu, double eps) {
  if (mu.is_lattice()) throw Error("abelian_prop_check expects a finite abelian carrier");
  if (!mu.group()->abelian()) throw Error("abelian_prop_check rejects non-abelian carriers");
  if (std::abs(tv_norm(mu) - 1.0) > eps)
    throw Error("abelian_prop_check expects a unit measure");

  const GroupPtr& g = mu.group();
  const DualGroup dual = dual_group(g);
  const int n = g->order();

  AbelianPropReport report;
  const std::vector<cplx> mu_hat = fourier_transform(mu, dual);
  for (int chi = 0; chi < n; ++chi)
    if (std::abs(mu_hat[chi] - cplx{1.0, 0.0}) <= eps) report.z_hat.push_back(chi);
  report.z_nonempty = !report.z_hat.empty();

  // Independent side of the iff: does some character of G match the polar
  // phase on supp(mu)? Enumerate all |G| characters through the pairing.
  const std::vector<int> supp = mu.support();
  const std::map<int, cplx> phases = polar_phase(mu);
  int matching_chi = -1;
  for (int chi = 0; chi < n && matching_chi < 0; ++chi) {
    bool match = true;
    for (int s : supp)
      if (std::abs(dual.pairing(chi, s) - phases.at(s)) > eps) {
        match = false;
        break;
      }
    if (match) matching_chi = chi;
  }
  report.phase_is_character = matching_chi >= 0;
  report.iff_holds = report.z_nonempty == report.phase_is_character;

  if (report.z_nonempty) {
    report.coset_checked = true;
    // Z_{mu-hat} = chi_0 * (G_mu)^perp inside the dual group.
    const Subgroup g_mu = supp.empty() ? trivial_subgroup(g) : subgroup_closure(g, supp);
    std::vector<int> annihilator;
    for (int chi = 0; chi < n; ++chi) {
      bool kills = true;
      for (int h : g_mu.elements)
        if (std::abs(dual.pairing(chi, h) - cplx{1.0, 0.0}) > 1e-12) {
          kills = false;
          break;
        }
      if (kills) annihilator.push_back(chi);
    }
    const int chi0 = report.z_hat.front();
    std::vector<int> predicted;
    predicted.reserve(annihilator.size());
    for (int a : annihilator) predicted.push_back(dual.group->mul(chi0, a));
    std::sort(predicted.begin(), predicted.end());
    report.coset_match = predicted == report.z_hat;
  }
  return report;
}

}  // namespace convfix

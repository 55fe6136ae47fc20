#include "convfix/measure.hpp"

#include <algorithm>
#include <cmath>

namespace convfix {

ComplexMeasure ComplexMeasure::zero(GroupPtr g) {
  ComplexMeasure m;
  m.group_ = std::move(g);
  m.dense_.assign(m.group_->order(), cplx{0.0, 0.0});
  return m;
}

ComplexMeasure ComplexMeasure::delta(GroupPtr g, int at) {
  ComplexMeasure m = zero(std::move(g));
  m.dense_[at] = cplx{1.0, 0.0};
  return m;
}

ComplexMeasure ComplexMeasure::from_coeffs(GroupPtr g, std::vector<cplx> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(g->order()))
    throw Error("coefficient vector does not match the group order");
  ComplexMeasure m;
  m.group_ = std::move(g);
  m.dense_ = std::move(coeffs);
  return m;
}

ComplexMeasure ComplexMeasure::from_atoms(GroupPtr g,
                                          const std::vector<std::pair<int, cplx>>& atoms) {
  ComplexMeasure m = zero(std::move(g));
  for (const auto& [idx, c] : atoms) {
    if (idx < 0 || idx >= m.group_->order()) throw Error("atom index outside the group");
    m.dense_[idx] += c;
  }
  return m;
}

ComplexMeasure ComplexMeasure::lattice_zero(LatticeGroup z) {
  ComplexMeasure m;
  m.lattice_ = z;
  return m;
}

ComplexMeasure ComplexMeasure::lattice_delta(long long at, LatticeGroup z) {
  ComplexMeasure m = lattice_zero(z);
  m.sparse_[at] = cplx{1.0, 0.0};
  return m;
}

ComplexMeasure ComplexMeasure::lattice_from_atoms(
    const std::vector<std::pair<long long, cplx>>& atoms, LatticeGroup z) {
  ComplexMeasure m = lattice_zero(z);
  for (const auto& [n, c] : atoms) m.sparse_[n] += c;
  m.cleanup();
  return m;
}

cplx ComplexMeasure::at_lattice(long long n) const {
  const auto it = sparse_.find(n);
  return it == sparse_.end() ? cplx{0.0, 0.0} : it->second;
}

std::vector<int> ComplexMeasure::support(double rel_eps) const {
  const double cut = rel_eps * tv_norm(*this);
  std::vector<int> out;
  for (int g = 0; g < static_cast<int>(dense_.size()); ++g)
    if (std::abs(dense_[g]) > cut) out.push_back(g);
  return out;
}

std::vector<long long> ComplexMeasure::lattice_support(double rel_eps) const {
  const double cut = rel_eps * tv_norm(*this);
  std::vector<long long> out;
  for (const auto& [n, c] : sparse_)
    if (std::abs(c) > cut) out.push_back(n);
  return out;
}

bool ComplexMeasure::same_carrier(const ComplexMeasure& other) const {
  if (is_lattice() != other.is_lattice()) return false;
  if (is_lattice()) return true;
  return group_ == other.group_ || *group_ == *other.group_;
}

ComplexMeasure& ComplexMeasure::operator+=(const ComplexMeasure& other) {
  if (!same_carrier(other)) throw Error("carrier mismatch");
  if (is_lattice()) {
    for (const auto& [n, c] : other.sparse_) sparse_[n] += c;
  } else {
    for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] += other.dense_[i];
  }
  return *this;
}

ComplexMeasure& ComplexMeasure::operator-=(const ComplexMeasure& other) {
  if (!same_carrier(other)) throw Error("carrier mismatch");
  if (is_lattice()) {
    for (const auto& [n, c] : other.sparse_) sparse_[n] -= c;
  } else {
    for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] -= other.dense_[i];
  }
  return *this;
}

ComplexMeasure& ComplexMeasure::operator*=(cplx scalar) {
  if (is_lattice()) {
    for (auto& [n, c] : sparse_) c *= scalar;
  } else {
    for (auto& c : dense_) c *= scalar;
  }
  return *this;
}

void ComplexMeasure::cleanup(double rel_eps) {
  if (!is_lattice()) return;
  const double cut = rel_eps * tv_norm(*this);
  for (auto it = sparse_.begin(); it != sparse_.end();) {
    if (std::abs(it->second) <= cut)
      it = sparse_.erase(it);
    else
      ++it;
  }
}

double tv_norm(const ComplexMeasure& m) {
  double sum = 0.0;
  if (m.is_lattice()) {
    for (const auto& [n, c] : m.atoms()) sum += std::abs(c);
  } else {
    for (const cplx& c : m.coeffs()) sum += std::abs(c);
  }
  return sum;
}

ComplexMeasure convolve(const ComplexMeasure& mu, const ComplexMeasure& nu,
                        long long support_cap) {
  if (!mu.same_carrier(nu)) throw Error("carrier mismatch in convolution");
  if (mu.is_lattice()) {
    std::map<long long, cplx> acc;
    for (const auto& [a, ca] : mu.atoms())
      for (const auto& [b, cb] : nu.atoms()) acc[a + b] += ca * cb;
    std::vector<std::pair<long long, cplx>> atoms(acc.begin(), acc.end());
    ComplexMeasure result = ComplexMeasure::lattice_from_atoms(atoms, mu.lattice());
    result.cleanup();
    if (static_cast<long long>(result.atoms().size()) > support_cap)
      throw SupportCapError("lattice convolution support " +
                            std::to_string(result.atoms().size()) + " exceeds cap " +
                            std::to_string(support_cap));
    return result;
  }

  const GroupTable& g = *mu.group();
  std::vector<cplx> acc(g.order(), cplx{0.0, 0.0});
  for (int s = 0; s < g.order(); ++s) {
    const cplx cs = mu.at(s);
    if (cs == cplx{0.0, 0.0}) continue;
    for (int u = 0; u < g.order(); ++u) {
      const cplx cu = nu.at(u);
      if (cu == cplx{0.0, 0.0}) continue;
      acc[g.mul(s, u)] += cs * cu;  // t = s*u, i.e. u = s^{-1} t
    }
  }
  return ComplexMeasure::from_coeffs(mu.group(), std::move(acc));
}

ComplexMeasure absolute_value(const ComplexMeasure& omega) {
  if (omega.is_lattice()) {
    std::vector<std::pair<long long, cplx>> atoms;
    for (const auto& [n, c] : omega.atoms()) atoms.emplace_back(n, cplx{std::abs(c), 0.0});
    return ComplexMeasure::lattice_from_atoms(atoms, omega.lattice());
  }
  std::vector<cplx> coeffs;
  coeffs.reserve(omega.coeffs().size());
  for (const cplx& c : omega.coeffs()) coeffs.emplace_back(std::abs(c), 0.0);
  return ComplexMeasure::from_coeffs(omega.group(), std::move(coeffs));
}

std::map<int, cplx> polar_phase(const ComplexMeasure& omega) {
  if (omega.is_lattice()) throw Error("polar_phase expects a finite carrier");
  std::map<int, cplx> out;
  for (int g : omega.support()) out[g] = omega.at(g) / std::abs(omega.at(g));
  return out;
}

std::map<long long, cplx> polar_phase_lattice(const ComplexMeasure& omega) {
  if (!omega.is_lattice()) throw Error("polar_phase_lattice expects the Z carrier");
  std::map<long long, cplx> out;
  for (long long n : omega.lattice_support()) out[n] = omega.at_lattice(n) / std::abs(omega.at_lattice(n));
  return out;
}

ComplexMeasure cesaro(const ComplexMeasure& omega, long long n, long long support_cap) {
  if (n < 1) throw Error("cesaro requires n >= 1");
  ComplexMeasure power = omega;
  ComplexMeasure sum = omega;
  for (long long k = 2; k <= n; ++k) {
    power = convolve(power, omega, support_cap);
    sum += power;
  }
  sum *= cplx{1.0 / static_cast<double>(n), 0.0};
  return sum;
}

double windowed_sup(const ComplexMeasure& m, int window) {
  if (window < 1) throw Error("window must be >= 1");
  double sup = 0.0;
  if (m.is_lattice()) {
    for (const auto& [n, c] : m.atoms())
      if (std::llabs(n) <= window) sup = std::max(sup, std::abs(c));
  } else {
    for (const cplx& c : m.coeffs()) sup = std::max(sup, std::abs(c));
  }
  return sup;
}

double windowed_mass(const ComplexMeasure& m, int window) {
  if (window < 1) throw Error("window must be >= 1");
  if (!m.is_lattice()) return tv_norm(m);
  double mass = 0.0;
  for (const auto& [n, c] : m.atoms())
    if (std::llabs(n) <= window) mass += std::abs(c);
  return mass;
}

double cesaro_distance(const ComplexMeasure& a, const ComplexMeasure& b, int window) {
  ComplexMeasure diff = a;
  diff -= b;
  if (a.is_lattice()) return windowed_sup(diff, window);
  return tv_norm(diff);
}

CesaroTrace cesaro_limit(const ComplexMeasure& omega, const CesaroOptions& opts) {
  if (tv_norm(omega) > 1.0 + opts.eps)
    throw Error("cesaro_limit expects a contractive measure");

  CesaroTrace trace;
  trace.measure = omega;

  ComplexMeasure power = omega;  // omega^{*k}
  ComplexMeasure sum = omega;    // sum_{j<=k} omega^{*j}
  long long k = 1;

  auto snapshot = [&](long long n) {
    ComplexMeasure s = sum;
    s *= cplx{1.0 / static_cast<double>(n), 0.0};
    return s;
  };

  ComplexMeasure prev = snapshot(1);
  trace.terms.emplace_back(1, prev);

  for (long long n = 2; n <= opts.n_max; n *= 2) {
    while (k < n) {
      power = convolve(power, omega, opts.support_cap);
      sum += power;
      ++k;
    }
    ComplexMeasure current = snapshot(n);
    trace.terms.emplace_back(n, current);
    const double residual = cesaro_distance(current, prev, opts.window);
    trace.residuals.emplace_back(n, residual);

    const double mass = omega.is_lattice() ? windowed_mass(current, opts.window)
                                           : tv_norm(current);
    if (mass <= opts.eps) {
      trace.verdict = CesaroTrace::Verdict::ConvergedToZero;
      return trace;
    }
    if (residual <= opts.eps && is_idempotent(current, 10.0 * opts.eps)) {
      trace.verdict = CesaroTrace::Verdict::ConvergedTo;
      trace.limit = current;
      return trace;
    }
    prev = std::move(current);
  }
  trace.verdict = CesaroTrace::Verdict::Undecided;
  return trace;
}

bool is_idempotent(const ComplexMeasure& omega, double eps) {
  ComplexMeasure diff = convolve(omega, omega);
  diff -= omega;
  return tv_norm(diff) <= eps;
}

ComplexMeasure haar_on(const Subgroup& h) {
  ComplexMeasure m = ComplexMeasure::zero(h.parent);
  const cplx w{1.0 / static_cast<double>(h.elements.size()), 0.0};
  std::vector<std::pair<int, cplx>> atoms;
  for (int g : h.elements) atoms.emplace_back(g, w);
  return ComplexMeasure::from_atoms(h.parent, atoms);
}

ClassifyResult classify_idempotent(const ComplexMeasure& omega, double eps) {
  if (omega.is_lattice()) throw Error("classify_idempotent expects a finite carrier");
  if (!is_idempotent(omega, eps)) return NotIdempotent{};

  const std::vector<int> supp = omega.support();
  if (supp.empty()) return NotGreenleafForm{"zero measure passed the idempotence test"};

  Subgroup h{omega.group(), supp};
  // Support must itself be a subgroup for the Greenleaf form chi * m_H.
  const GroupTable& g = *omega.group();
  if (!h.contains(g.identity())) return NotGreenleafForm{"support misses the identity"};
  for (int a : supp) {
    if (!h.contains(g.inv(a))) return NotGreenleafForm{"support not inverse-closed"};
    for (int b : supp)
      if (!h.contains(g.mul(a, b))) return NotGreenleafForm{"support not product-closed"};
  }

  const double expected = 1.0 / static_cast<double>(supp.size());
  std::map<int, cplx> phases;
  for (int a : supp) {
    const cplx v = omega.at(a);
    if (std::abs(std::abs(v) - expected) > eps)
      return NotGreenleafForm{"coefficient modulus deviates from 1/|H|"};
    phases[a] = v / std::abs(v);
  }

  ExtendResult ext = extend_character(omega.group(), supp, phases, eps);
  if (std::holds_alternative<CharacterConflict>(ext))
    return NotGreenleafForm{"support phases do not extend to a character: " +
                            std::get<CharacterConflict>(ext).describe(g)};
  CharacterMap chi = std::get<CharacterMap>(std::move(ext));
  if (chi.domain().elements != supp)
    return NotGreenleafForm{"phase extension left the support subgroup"};

  for (int a : supp)
    if (std::abs(omega.at(a) - chi.at(a) * expected) > eps)
      return NotGreenleafForm{"fitted chi * m_H deviates beyond tolerance"};
  return GreenleafForm{std::move(h), std::move(chi)};
}

Adaptedness adaptedness(const ComplexMeasure& omega) {
  if (omega.is_lattice()) throw Error("adaptedness expects a finite carrier");
  Adaptedness out;
  out.support = absolute_value(omega).support();
  out.generated = out.support.empty() ? trivial_subgroup(omega.group())
                                      : subgroup_closure(omega.group(), out.support);
  const bool full = out.generated.order() == omega.group()->order();
  out.adapted = full;
  out.nondegenerate = full;  // S_omega = G_omega on a finite group
  return out;
}

namespace {

std::vector<int> draw_support(Rng& rng, int order, double density) {
  std::vector<int> supp;
  for (int g = 0; g < order; ++g)
    if (rng.bernoulli(density)) supp.push_back(g);
  if (supp.empty()) supp.push_back(static_cast<int>(rng.below(order)));
  return supp;
}

}  // namespace

ComplexMeasure random_contractive(const GroupPtr& g, std::uint64_t seed,
                                  const DrawProfile& profile) {
  Rng rng(seed);
  std::vector<cplx> coeffs(g->order(), cplx{0.0, 0.0});

  switch (profile.kind) {
    case MeasureProfile::RealSigned: {
      for (int x : draw_support(rng, g->order(), profile.density)) {
        const double mag = rng.uniform(0.05, 1.0);
        coeffs[x] = cplx{rng.bernoulli(0.5) ? mag : -mag, 0.0};
      }
      break;
    }
    case MeasureProfile::Complex: {
      for (int x : draw_support(rng, g->order(), profile.density)) {
        const double mag = rng.uniform(0.05, 1.0);
        coeffs[x] = std::polar(mag, rng.uniform(0.0, 2.0 * 3.14159265358979323846));
      }
      break;
    }
    case MeasureProfile::CharacterTwisted: {
      if (!profile.twist_subgroup || !profile.twist_character)
        throw Error("character-twisted profile needs a subgroup and character");
      const Subgroup& h = *profile.twist_subgroup;
      std::vector<int> supp;
      for (int x : h.elements)
        if (rng.bernoulli(profile.density)) supp.push_back(x);
      if (supp.empty()) supp.push_back(h.elements[rng.below(h.elements.size())]);
      double mass = 0.0;
      std::vector<double> weights(supp.size());
      for (std::size_t i = 0; i < supp.size(); ++i) {
        weights[i] = rng.uniform(0.05, 1.0);
        mass += weights[i];
      }
      for (std::size_t i = 0; i < supp.size(); ++i)
        coeffs[supp[i]] = profile.twist_character->at(supp[i]) * (weights[i] / mass);
      return ComplexMeasure::from_coeffs(g, std::move(coeffs));
    }
  }

  double mass = 0.0;
  for (const cplx& c : coeffs) mass += std::abs(c);
  for (cplx& c : coeffs) c /= mass;
  return ComplexMeasure::from_coeffs(g, std::move(coeffs));
}

ComplexMeasure random_contractive_lattice(std::uint64_t seed, const DrawProfile& profile,
                                          int half_width, LatticeGroup z) {
  Rng rng(seed);
  std::map<long long, cplx> coeffs;
  const int span = 2 * half_width + 1;
  for (int i = 0; i < span; ++i) {
    if (!rng.bernoulli(profile.density)) continue;
    const long long n = i - half_width;
    const double mag = rng.uniform(0.05, 1.0);
    if (profile.kind == MeasureProfile::RealSigned)
      coeffs[n] = cplx{rng.bernoulli(0.5) ? mag : -mag, 0.0};
    else
      coeffs[n] = std::polar(mag, rng.uniform(0.0, 2.0 * 3.14159265358979323846));
  }
  if (coeffs.empty()) coeffs[0] = cplx{1.0, 0.0};
  double mass = 0.0;
  for (const auto& [n, c] : coeffs) mass += std::abs(c);
  std::vector<std::pair<long long, cplx>> atoms;
  for (const auto& [n, c] : coeffs) atoms.emplace_back(n, c / mass);
  return ComplexMeasure::lattice_from_atoms(atoms, z);
}

}  // namespace convfix

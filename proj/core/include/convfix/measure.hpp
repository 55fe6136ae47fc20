#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "convfix/group.hpp"
#include "convfix/rng.hpp"

namespace convfix {

/// A complex measure on a finite group (dense coefficient vector) or on Z
/// (sparse, finitely supported map). Value semantics throughout.
class ComplexMeasure {
 public:
  ComplexMeasure() = default;  // empty measure on Z; reassign before use

  static ComplexMeasure zero(GroupPtr g);
  static ComplexMeasure delta(GroupPtr g, int at);
  static ComplexMeasure from_coeffs(GroupPtr g, std::vector<cplx> coeffs);
  static ComplexMeasure from_atoms(GroupPtr g, const std::vector<std::pair<int, cplx>>& atoms);

  static ComplexMeasure lattice_zero(LatticeGroup z = {});
  static ComplexMeasure lattice_delta(long long at, LatticeGroup z = {});
  static ComplexMeasure lattice_from_atoms(const std::vector<std::pair<long long, cplx>>& atoms,
                                           LatticeGroup z = {});

  bool is_lattice() const { return group_ == nullptr; }
  const GroupPtr& group() const { return group_; }
  const LatticeGroup& lattice() const { return lattice_; }

  const std::vector<cplx>& coeffs() const { return dense_; }
  const std::map<long long, cplx>& atoms() const { return sparse_; }

  cplx at(int g) const { return dense_[g]; }
  cplx at_lattice(long long n) const;

  // Support with a relative modulus cutoff; exact zeros never count.
  std::vector<int> support(double rel_eps = 1e-13) const;
  std::vector<long long> lattice_support(double rel_eps = 1e-13) const;

  ComplexMeasure& operator+=(const ComplexMeasure& other);
  ComplexMeasure& operator-=(const ComplexMeasure& other);
  ComplexMeasure& operator*=(cplx scalar);
  friend ComplexMeasure operator+(ComplexMeasure a, const ComplexMeasure& b) { return a += b; }
  friend ComplexMeasure operator-(ComplexMeasure a, const ComplexMeasure& b) { return a -= b; }
  friend ComplexMeasure operator*(cplx scalar, ComplexMeasure m) { return m *= scalar; }

  bool same_carrier(const ComplexMeasure& other) const;

  // Drops lattice atoms below rel_eps * tv_norm (keeps Z supports honest).
  void cleanup(double rel_eps = 1e-15);

 private:
  GroupPtr group_;
  LatticeGroup lattice_;
  std::vector<cplx> dense_;
  std::map<long long, cplx> sparse_;
};

/// Total variation norm: sum of coefficient moduli.
double tv_norm(const ComplexMeasure& m);

/// Convolution (mu * nu)(t) = sum_s mu(s) nu(s^{-1} t). On Z the result
/// support is clipped against support_cap: exceeding it throws
/// SupportCapError rather than truncating silently.
ComplexMeasure convolve(const ComplexMeasure& mu, const ComplexMeasure& nu,
                        long long support_cap = 20000);

/// Pointwise modulus |omega|(g) = |omega(g)|.
ComplexMeasure absolute_value(const ComplexMeasure& omega);

/// Unimodular phase omega/|omega| on the support. Composing with
/// absolute_value reconstructs omega exactly.
std::map<int, cplx> polar_phase(const ComplexMeasure& omega);
std::map<long long, cplx> polar_phase_lattice(const ComplexMeasure& omega);

/// Cesaro average S_n = (1/n) sum_{k<=n} omega^{*k}, by incremental powering.
ComplexMeasure cesaro(const ComplexMeasure& omega, long long n, long long support_cap = 20000);

struct CesaroOptions {
  double eps = 1e-9;
  long long n_max = 4096;
  int window = 64;            // lattice-only: pairing window for the weak* surrogate
  long long support_cap = 20000;
};

struct CesaroTrace {
  enum class Verdict { ConvergedTo, ConvergedToZero, Undecided };

  ComplexMeasure measure;                                  // the input omega
  std::vector<std::pair<long long, ComplexMeasure>> terms; // S_n snapshots at recorded n
  std::vector<std::pair<long long, double>> residuals;     // (n, dist(S_n, S_{n/2}))
  Verdict verdict = Verdict::Undecided;
  std::optional<ComplexMeasure> limit;                     // set iff ConvergedTo
};

/// Runs S_n at doubling checkpoints up to n_max. ConvergedTo requires the
/// checkpoint residual to drop below eps and the candidate to pass
/// is_idempotent at 10*eps; ConvergedToZero requires the (windowed, on Z)
/// mass to drop below eps. Everything else stays Undecided: contractive
/// measures may genuinely oscillate too slowly to certify.
CesaroTrace cesaro_limit(const ComplexMeasure& omega, const CesaroOptions& opts = {});

/// tv_norm(omega*omega - omega) <= eps.
bool is_idempotent(const ComplexMeasure& omega, double eps = 1e-9);

struct GreenleafForm {
  Subgroup subgroup;
  CharacterMap character;
};
struct NotGreenleafForm {
  std::string reason;
};
struct NotIdempotent {};
using ClassifyResult = std::variant<GreenleafForm, NotGreenleafForm, NotIdempotent>;

/// Greenleaf classification of a contractive idempotent: omega = chi * m_H
/// with H the support subgroup. The character is fitted by reading phases
/// off the support and extending, never by least squares.
ClassifyResult classify_idempotent(const ComplexMeasure& omega, double eps = 1e-9);

/// Normalised uniform probability on a finite subgroup.
ComplexMeasure haar_on(const Subgroup& h);

struct Adaptedness {
  std::vector<int> support;
  Subgroup generated;   // G_omega = S_omega on a finite group
  bool adapted = false;
  bool nondegenerate = false;
};
Adaptedness adaptedness(const ComplexMeasure& omega);

enum class MeasureProfile { RealSigned, Complex, CharacterTwisted };

struct DrawProfile {
  MeasureProfile kind = MeasureProfile::Complex;
  double density = 0.5;
  // CharacterTwisted: omega = chi * (random probability on H), so that
  // omega = chi |omega| holds exactly by construction.
  std::optional<Subgroup> twist_subgroup;
  std::optional<CharacterMap> twist_character;
};

/// Deterministic seeded draw with tv_norm normalised to 1.
ComplexMeasure random_contractive(const GroupPtr& g, std::uint64_t seed, const DrawProfile& profile);

/// Lattice variant; atoms live in [-half_width, half_width].
ComplexMeasure random_contractive_lattice(std::uint64_t seed, const DrawProfile& profile,
                                          int half_width = 4, LatticeGroup z = {});

// Windowed sup |S(m)| over |m| <= window and windowed mass; the computable
// weak* surrogates on Z.
double windowed_sup(const ComplexMeasure& m, int window);
double windowed_mass(const ComplexMeasure& m, int window);

// sup-metric used by the convergence detector: tv distance on finite
// carriers, windowed sup distance on Z.
double cesaro_distance(const ComplexMeasure& a, const ComplexMeasure& b, int window);

}  // namespace convfix

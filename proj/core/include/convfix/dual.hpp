#pragma once

#include "convfix/fixed_point.hpp"
#include "convfix/measure.hpp"

namespace convfix {

/// An atomic measure on the circle, the B(Z) model: n -> sum c_j e^{i n theta_j}
/// has Fourier-Stieltjes norm sum |c_j|.
struct AtomicToralMeasure {
  struct Atom {
    cplx coeff;
    double angle;  // in [0, 2pi)
  };
  std::vector<Atom> atoms;

  double tv() const;
  cplx eval(long long n) const;
  AtomicToralMeasure power(int k) const;  // k-fold toral convolution (angles add mod 2pi)
  void normalize_angles();
};

enum class CertificateKind { PositiveDefinite, AbelianTV, AtomicToral, Unverified };

struct NormCertificate {
  CertificateKind kind = CertificateKind::Unverified;
  std::optional<double> norm;  // absent iff Unverified
};

std::string certificate_kind_name(CertificateKind k);

/// An element of B(G): a complex function on a finite group, or on Z via an
/// atomic toral measure. Carries a B-norm certificate: positive-definite
/// inputs certify ||omega|| = omega(e) through the Gram eigenvalue test;
/// abelian carriers certify through the inverse Fourier transform; Z inputs
/// through the toral atom mass. Anything else stays Unverified.
class DualFunction {
 public:
  static DualFunction finite(GroupPtr g, std::vector<cplx> values);
  static DualFunction lattice(AtomicToralMeasure toral, int window = 64);

  bool is_lattice() const { return group_ == nullptr; }
  const GroupPtr& group() const { return group_; }
  int window() const { return window_; }

  cplx at(int g) const { return values_[g]; }
  cplx at_lattice(long long n) const { return toral_->eval(n); }
  const std::vector<cplx>& values() const { return values_; }
  const AtomicToralMeasure& toral() const { return *toral_; }

  const NormCertificate& certificate() const { return cert_; }
  bool positive_definite() const { return psd_; }
  double gram_min_eigenvalue() const { return gram_min_eig_; }
  double gram_hermitian_residual() const { return gram_herm_residual_; }

  // Abelian carriers: the measure on the dual group whose transform
  // reproduces the values, plus the dual group it lives on.
  const std::optional<ComplexMeasure>& tv_measure() const { return tv_measure_; }
  const std::shared_ptr<const DualGroup>& dual_data() const { return dual_; }

 private:
  DualFunction() = default;
  GroupPtr group_;
  int window_ = 64;
  std::vector<cplx> values_;
  std::optional<AtomicToralMeasure> toral_;
  NormCertificate cert_;
  bool psd_ = false;
  double gram_min_eig_ = 0.0;
  double gram_herm_residual_ = 0.0;
  std::optional<ComplexMeasure> tv_measure_;
  std::shared_ptr<const DualGroup> dual_;
};

DualFunction make_dual(GroupPtr g, std::vector<cplx> values);
DualFunction make_dual_lattice(AtomicToralMeasure toral, int window = 64);

/// Convolution on the dual side is pointwise multiplication: omega^{*k} has
/// values omega(t)^k. Certificates are recomputed on the powered values
/// (toral and abelian carriers exactly; positive definiteness through the
/// Gram eigencheck); anything else is Unverified.
DualFunction pointwise_power(const DualFunction& omega, int k);

struct ZSetReport {
  std::vector<int> z_set;            // {s : |omega(s) - 1| <= eps}
  bool is_coset = false;
  std::optional<int> rep;            // minimal-index representative s
  std::optional<Subgroup> subgroup;  // H with Z = sH
  bool flagged_unverified = false;   // norm certificate absent
  bool contractive = false;          // certified norm <= 1 + eps
  bool nondegenerate_checked = false;
  bool nondegenerate = false;        // KNR surrogate, PSD inputs only
  bool nondeg_implies_trivial = true;
  double near_miss = 0.0;            // closest |omega(s)-1| outside the set
  std::vector<std::pair<std::string, double>> residuals;
};

/// Level set analysis of {omega = 1} with the coset-structure assertion for
/// contractive inputs and the Z subset {e} assertion for non-degenerate
/// positive-definite inputs.
ZSetReport z_set(const DualFunction& omega, double eps = 1e-9);

struct VnFixedReport {
  ZSetReport z;
  Subspace fixed;                  // VN(G) in lambda(g) coordinates; L_omega is diagonal
  std::vector<int> fixed_indices;  // {g : lambda(g) fixed}
  bool structural_match = false;   // fixed == span{lambda(s h)}
  bool ok = false;
};

/// Fix L_omega inside VN(G), modelled exactly in the lambda(g) basis where
/// the multiplier action is diagonal: lambda(g) -> omega(g) lambda(g).
VnFixedReport vn_fixed_space(const DualFunction& omega, double eps = 1e-9);

/// KNR non-degeneracy surrogate for positive-definite inputs: the Gram
/// matrices of all pointwise powers have trivial common kernel.
bool dual_nondegenerate_psd(const DualFunction& omega, double tol = 1e-10);

struct DualPairingCase {
  std::string test_fn;       // label of the test function
  cplx cesaro_direct;        // (1/n) sum_k <omega^k, f>, summed directly
  cplx cesaro_closed_form;   // geometric closed form (lattice single-atom case)
  cplx iterate;              // <omega^n, f>
  bool closed_form_valid = false;
  double agreement = 0.0;    // |direct - closed form|
};

struct MukherjeaDualReport {
  std::vector<DualPairingCase> cases;
  bool z_nonempty = false;
  double max_cesaro_off_z = 0.0;  // pairings with test functions avoiding Z
  double min_cesaro_on_z = 0.0;   // pairings witnessing Z (finite case)
  bool consistent = false;
  std::vector<std::pair<std::string, double>> residuals;
};

/// Dual Mukherjea checks. Test functions are finitely supported (given as
/// measures on the same carrier); pairings are <omega^k, f> = sum_m
/// omega(m)^k f(m). On Z single-atom inputs the Cesaro pairing is compared
/// against the exact geometric closed form.
MukherjeaDualReport mukherjea_dual(const DualFunction& omega,
                                   const std::vector<ComplexMeasure>& test_fns, long long n_max,
                                   double eps);

struct AbelianPropReport {
  bool z_nonempty = false;
  bool phase_is_character = false;  // d mu / d |mu| agrees with a character on supp mu
  bool iff_holds = false;
  bool coset_checked = false;
  bool coset_match = false;         // Z_{mu-hat} = chi_0 * (G_mu)^perp
  std::vector<int> z_hat;           // indices into the dual group
  std::vector<std::pair<std::string, double>> residuals;
};

/// Final abelian proposition: Z_{mu-hat} nonempty iff the polar phase of mu
/// is the restriction of a character, with the annihilator-coset structure
/// when nonempty.
AbelianPropReport abelian_prop_check(const ComplexMeasure& mu, double eps = 1e-9);

// --- abelian Fourier helpers (shared with suites/tests) ---

/// mu-hat(chi) = sum_s conj(pairing(chi, s)) mu(s), as a vector over the
/// dual group.
std::vector<cplx> fourier_transform(const ComplexMeasure& mu, const DualGroup& dual);

/// Inverse of fourier_transform; round-trips to 1e-12.
ComplexMeasure inverse_fourier(const GroupPtr& g, const std::vector<cplx>& dual_values,
                               const DualGroup& dual);

/// Realisation map M(G-hat) -> B(G): w(s) = sum_chi conj(pairing(chi, s)) nu(chi).
std::vector<cplx> dual_transform(const ComplexMeasure& nu_on_dual, const DualGroup& dual);

/// The measure on G-hat whose dual_transform equals the given values; its
/// tv norm is the exact B(G) norm on an abelian carrier.
ComplexMeasure b_norm_measure(const GroupPtr& g, const std::vector<cplx>& values,
                              const DualGroup& dual);

}  // namespace convfix

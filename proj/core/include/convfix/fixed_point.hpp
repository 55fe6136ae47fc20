#pragma once

#include "convfix/measure.hpp"
#include "convfix/subspace.hpp"

namespace convfix {

enum class Convention { Left, Right };

/// The convolution operator as an explicit matrix on C^{|G|}:
///   Left:  (L_omega f)(t) = sum_s omega(s) f(s t)
///   Right: (R_omega f)(t) = sum_s omega(s) f(t s)
/// Row absolute sums equal tv_norm(omega), so the ell-infinity operator
/// norm never exceeds it.
Eigen::MatrixXcd operator_matrix(const ComplexMeasure& omega, Convention convention);

/// Reflection check(s) = omega(s^{-1}).
ComplexMeasure reflect(const ComplexMeasure& omega);

/// lambda(nu) f (t) = sum_s nu(s) f(s^{-1} t); equals the Left matrix of the
/// reflected measure. This is the regular-representation integral used by
/// the L_p range predictions.
Eigen::MatrixXcd lambda_matrix(const ComplexMeasure& nu);

/// Fix L_omega as the numerical null space of (L_omega - I). The optional
/// margin reports how far the singular spectrum sits from the rank cutoff
/// (in decades).
Subspace fixed_subspace(const ComplexMeasure& omega, double tol = 1e-10,
                        double* margin = nullptr);

/// { f : f(s t) = conj(chi(s)) f(t) for s in H, t in G }, built from one
/// free value per right coset Ht. Dimension |G| / |H|.
Subspace predicted_fixed_space(const GroupPtr& g, const Subgroup& h, const CharacterMap& chi);

/// A unimodular vector c with c(s t) = conj(chi(s)) c(t) for s in H; the
/// coset-consistent extension used to transport Fix L_{|omega|} onto
/// Fix L_omega. rep_choice picks the per-coset free phase anchor: 0 anchors
/// the minimal-index representative at 1, other values rotate it (the
/// transported subspace is extension-independent).
Eigen::VectorXcd character_extension_vector(const GroupPtr& g, const Subgroup& h,
                                            const CharacterMap& chi, int rep_choice = 0);

struct NoCharacter {
  CharacterConflict conflict;
};
using ExtractResult = std::variant<CharacterMap, NoCharacter>;

/// Reads polar phases off supp(omega) and extends them over the generated
/// subgroup G_{|omega|}; success certifies omega = chi |omega| exactly.
ExtractResult extract_character(const ComplexMeasure& omega);

struct FixedPointReport {
  int dim_fix = 0;
  std::optional<CharacterMap> character;
  std::optional<CharacterConflict> conflict;
  bool factorization_ok = false;  // Fix L_omega = conj(chi) . Fix L_|omega|
  bool structural_checked = false;
  bool structural_match = false;  // against predicted_fixed_space
  bool ok = false;                // everything the theorems promise held
  std::vector<std::pair<std::string, double>> residuals;
};

/// Checks the character-factorisation theorem on one measure: when the
/// fixed space is non-zero a character must exist, Fix L_omega must equal
/// conj(chi) . Fix L_{|omega|}, and (abelian carrier or non-degenerate
/// omega) the coset-structured prediction must match.
FixedPointReport verify_character_factorization(const ComplexMeasure& omega, double tol = 1e-8);

struct CesaroProjectionReport {
  CesaroTrace::Verdict verdict = CesaroTrace::Verdict::Undecided;
  int dim_fix = 0;
  bool ok = false;
  std::vector<std::pair<std::string, double>> residuals;
};

/// ConvergedTo limits must act as projections onto Fix L_omega; the zero
/// verdict forces a zero fixed space. Throws if the trace is Undecided.
CesaroProjectionReport cesaro_projection_check(const CesaroTrace& trace, double tol = 1e-8);

struct IdealReport {
  Subspace ideal;             // I_omega inside the predual C^{|G|}
  int dim_ideal = 0;
  int dim_fix = 0;
  bool rank_sum_exact = false;      // dim I + dim Fix == |G|
  double annihilator_angle = 0.0;   // I^perp (bilinear pairing) vs Fix L_omega
  double augmentation_residual = 0.0;  // max |sum of basis column| (states only)
  bool is_state = false;
  bool equals_augmentation_ideal = false;  // I = ell^1_0
  std::vector<std::pair<std::string, double>> residuals;
};

/// I_omega = span{ delta_g - omega * delta_g } with its pre-annihilator
/// identity against Fix L_omega (bilinear ell^1-ell^infinity duality).
IdealReport ideal_I_omega(const ComplexMeasure& omega, double tol = 1e-10);

struct LpReport {
  double p = 2.0;
  Subspace fixed;
  bool character_found = false;
  bool range_match = false;   // Fix = Ran lambda(conj(chi) m_{G_|omega|})
  double range_angle = 0.0;
  bool adapted = false;
  std::vector<std::pair<std::string, double>> residuals;
};

/// Finite (compact) case of the L_p fixed point theorem: on a finite group
/// all ell_p coincide, and the fixed space must be the range of
/// lambda(conj(chi) m_{G_{|omega|}}) whenever a character exists.
LpReport lp_fixed_points(const ComplexMeasure& omega, double p, double tol = 1e-8);

/// Non-compact shadow on Z: the windowed sup of S_n pairings for an adapted
/// probability must decay. Returns max_{|m|<=window} |S_n(m)|.
double lattice_windowed_cesaro_sup(const ComplexMeasure& omega, int window, long long n,
                                   long long support_cap = 20000);

struct RepFixedReport {
  Subspace fixed;
  bool matched = false;       // against the simultaneous conj(chi)-eigenspace
  double angle = 0.0;
  bool character_found = false;
  std::vector<std::pair<std::string, double>> residuals;
};

/// pi(omega) = sum_s omega(s) pi(s); its fixed vectors must be the common
/// eigenspace { x : pi(s) x = conj(chi(s)) x, s in G_{|omega|} }. Rejects
/// non-homomorphic pi.
RepFixedReport representation_fixed_points(const std::vector<Eigen::MatrixXcd>& pi,
                                           const ComplexMeasure& omega, double tol = 1e-8);

/// Permutation matrices of the left regular representation.
std::vector<Eigen::MatrixXcd> regular_representation(const GroupTable& g);

/// Two-dimensional irreducible fixtures; defined for dihedral:4,
/// quaternion8 and symmetric:3.
std::vector<Eigen::MatrixXcd> irrep_2d(const GroupTable& g);

struct MukherjeaLatticeReport {
  bool compact = false;            // G_omega compact on Z <=> support in {0}
  double iterate_sup = 0.0;        // windowed sup of omega^{*n_max}
  double cesaro_sup = 0.0;         // windowed sup of S_{n_max}
  bool decay = false;
  bool consistent = false;         // decay <=> not compact
  std::vector<std::pair<std::string, double>> residuals;
};

/// Random-walk equivalence on Z for probability measures: Cesaro and
/// iterate windowed decay against compactness of the generated subgroup.
MukherjeaLatticeReport mukherjea_lattice(const ComplexMeasure& omega, int window, long long n_max,
                                         double eps, long long support_cap = 20000);

struct EquivalenceReport {
  bool cesaro_nonzero = false;      // (i)  S_n do not converge to 0
  bool limit_idempotent = false;    // (ii) ergodic limit is a nonzero idempotent
  bool fixed_nonzero = false;       // (iii)/(iv) Fix L_omega != 0
  bool left_fixed_exists = false;   // (v)  some tau != 0 with tau * omega = tau
  bool all_equal = false;
  ComplexMeasure ergodic_limit;
  std::vector<std::pair<std::string, double>> residuals;
};

/// The finite-scale equivalence suite. Condition (i) is decided exactly via
/// the mean-ergodic decomposition of the measure-side convolution matrix
/// (Cesaro averages of a power-bounded matrix always converge in finite
/// dimensions), independent of the function-side fixed space computation.
EquivalenceReport equivalence_suite(const ComplexMeasure& omega, double tol = 1e-10);

/// Exact Cesaro limit of S_n(omega) on a finite carrier: the projection of
/// omega onto ker(T - I) along ran(T - I), where T mu = mu * omega.
ComplexMeasure ergodic_cesaro_limit(const ComplexMeasure& omega, double tol = 1e-10);

}  // namespace convfix

#pragma once

#include <Eigen/Dense>

#include "convfix/group.hpp"

namespace convfix {

/// A linear subspace of C^n held as an orthonormal column basis.
struct Subspace {
  Eigen::MatrixXcd basis;  // n x d, orthonormal columns
  double tol = 1e-10;

  int ambient() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Numerical null space via a rank-revealing SVD: singular values at or
/// below tol * sigma_max count as zero (so the zero matrix yields the full
/// space). When margin is given it receives the smallest decadic distance
/// of any singular value from the threshold; near-threshold spectra are
/// reported by callers, not silently resolved.
Subspace null_space(const Eigen::MatrixXcd& m, double tol = 1e-10, double* margin = nullptr);

/// Column space by the same rank rule.
Subspace column_space(const Eigen::MatrixXcd& m, double tol = 1e-10, double* margin = nullptr);

/// Largest principal angle between equal-dimension subspaces, computed from
/// sin(theta) = ||(I - A A^H) B||_2 so that angles near zero keep full
/// precision. Returns pi/2 when dimensions differ.
double principal_angle(const Subspace& a, const Subspace& b);

struct SubspaceComparison {
  bool equal = false;
  double angle = 0.0;
};

SubspaceComparison subspace_equal(const Subspace& a, const Subspace& b, double tol);

/// diag(weights) * basis; multiplying by a unimodular weight vector keeps
/// the basis orthonormal.
Subspace pointwise_scale(const Subspace& s, const Eigen::VectorXcd& weights);

/// Null space of the vertical stack of the given matrices (simultaneous
/// kernel).
Subspace stacked_null_space(const std::vector<Eigen::MatrixXcd>& ms, double tol = 1e-10);

}  // namespace convfix

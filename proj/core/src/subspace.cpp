#include "convfix/subspace.hpp"

#include <cmath>

namespace convfix {

namespace {

int rank_of(const Eigen::VectorXd& sv, double tol) {
  const double scale = sv.size() ? sv(0) : 0.0;
  const double cut = tol * scale;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

double margin_of(const Eigen::VectorXd& sv, double tol) {
  const double cut = tol * (sv.size() ? sv(0) : 0.0);
  if (cut == 0.0) return 300.0;  // zero matrix: everything is cleanly null
  double margin = 300.0;
  for (int i = 0; i < sv.size(); ++i) {
    const double ratio = sv(i) / cut;
    margin = std::min(margin, std::abs(std::log10(std::max(ratio, 1e-300))));
  }
  return margin;
}

}  // namespace

Subspace null_space(const Eigen::MatrixXcd& m, double tol, double* margin) {
  // Only the V side is needed; a full U on tall stacked matrices is what
  // hurts.
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const int rank = rank_of(svd.singularValues(), tol);
  if (margin) *margin = margin_of(svd.singularValues(), tol);
  Subspace out;
  out.tol = tol;
  out.basis = svd.matrixV().rightCols(m.cols() - rank);
  return out;
}

Subspace column_space(const Eigen::MatrixXcd& m, double tol, double* margin) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const int rank = rank_of(svd.singularValues(), tol);
  if (margin) *margin = margin_of(svd.singularValues(), tol);
  Subspace out;
  out.tol = tol;
  out.basis = svd.matrixU().leftCols(rank);
  return out;
}

double principal_angle(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw Error("principal angle needs a common ambient space");
  if (a.dim() != b.dim()) return std::asin(1.0);  // pi/2 marker for dimension mismatch
  if (a.dim() == 0) return 0.0;
  auto residual_sine = [](const Subspace& p, const Subspace& q) {
    // ||(I - P P^H) Q||_2 = sin of the largest angle from q into p.
    Eigen::MatrixXcd rest = q.basis - p.basis * (p.basis.adjoint() * q.basis);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest);
    return svd.singularValues()(0);
  };
  const double s = std::max(residual_sine(a, b), residual_sine(b, a));
  return std::asin(std::min(1.0, s));
}

SubspaceComparison subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  SubspaceComparison out;
  out.angle = principal_angle(a, b);
  out.equal = a.dim() == b.dim() && out.angle <= tol;
  return out;
}

Subspace pointwise_scale(const Subspace& s, const Eigen::VectorXcd& weights) {
  Subspace out = s;
  out.basis = weights.asDiagonal() * s.basis;
  return out;
}

Subspace stacked_null_space(const std::vector<Eigen::MatrixXcd>& ms, double tol) {
  if (ms.empty()) throw Error("stacked_null_space needs at least one matrix");
  long rows = 0;
  for (const auto& m : ms) rows += m.rows();
  Eigen::MatrixXcd stack(rows, ms.front().cols());
  long at = 0;
  for (const auto& m : ms) {
    stack.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return null_space(stack, tol);
}

}  // namespace convfix

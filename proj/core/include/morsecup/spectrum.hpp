#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace morsecup {

/// Numerical thresholds shared by the floating-point modules.
struct Tolerances {
  double eps_sym = 1e-9;
  double eps_orth = 1e-9;
  double eps_eig = 1e-9;
  double delta_gap = 1e-3;
  double eps_on = 1e-8;
  double eps_flow = 1e-7;
  double t_max = 50.0;
  double eps_support = 1e-10;
  double eps_rank = 1e-9;
  double eps_pos = 1e-8;
  /// Minimum |extremal coefficient| of span intersections accepted by the
  /// random generic sampler, so intersection points stay clear of strata walls.
  double generic_margin = 1e-3;
};

/// Symmetric matrix with strictly increasing eigenvalues and orthonormal
/// eigenvectors (columns of `eigenvectors`, in eigenvalue order).
struct SymmetricSpectrum {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int dim() const { return static_cast<int>(matrix.rows()); }
  /// Largest eigen index n (dim - 1).
  int top_index() const { return dim() - 1; }
  Eigen::VectorXd eigenvector(int k) const { return eigenvectors.col(k); }
};

/// Throws NonSymmetric or DegenerateSpectrum. Each eigenvector is signed so
/// its first entry above 1e-8 in magnitude is positive.
SymmetricSpectrum eigendecompose(const Eigen::MatrixXd& matrix, const Tolerances& tol = {});

/// Q diag(lambda) Q^T with Q Haar-distributed and eigenvalues k + U(-0.3, 0.3);
/// deterministic in `seed`.
SymmetricSpectrum random_spectrum(int n, std::uint64_t seed, const Tolerances& tol = {});

bool same_matrix(const SymmetricSpectrum& a, const SymmetricSpectrum& b, double eps = 1e-12);

}  // namespace morsecup

#include "morsecup/spectrum.hpp"

#include "morsecup/errors.hpp"

#include <random>
#include <sstream>

namespace morsecup {

SymmetricSpectrum eigendecompose(const Eigen::MatrixXd& matrix, const Tolerances& tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw MorseError(ErrorCode::DimensionMismatch, "matrix must be square and nonempty");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > tol.eps_sym * scale)
    throw MorseError(ErrorCode::NonSymmetric, "matrix is not symmetric");

  const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw MorseError(ErrorCode::DegenerateSpectrum, "eigen solver failed");

  SymmetricSpectrum s{matrix, solver.eigenvalues(), solver.eigenvectors()};
  for (int i = 0; i + 1 < s.dim(); ++i) {
    if (s.eigenvalues(i + 1) - s.eigenvalues(i) < tol.delta_gap) {
      std::ostringstream msg;
      msg << "eigenvalues " << s.eigenvalues(i) << " and " << s.eigenvalues(i + 1) << " closer than " << tol.delta_gap;
      throw MorseError(ErrorCode::DegenerateSpectrum, msg.str());
    }
  }
  for (int k = 0; k < s.dim(); ++k) {
    auto v = s.eigenvectors.col(k);
    for (int i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-8) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
  }
  const double residual = (sym * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
  const double orth = (s.eigenvectors.transpose() * s.eigenvectors -
                       Eigen::MatrixXd::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff();
  if (residual > tol.eps_eig * scale * s.dim() || orth > tol.eps_orth * s.dim())
    throw MorseError(ErrorCode::DegenerateSpectrum, "eigen decomposition failed accuracy checks");
  return s;
}

SymmetricSpectrum random_spectrum(int n, std::uint64_t seed, const Tolerances& tol) {
  if (n < 1) throw MorseError(ErrorCode::DimensionMismatch, "n must be at least 1");
  const int dim = n + 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);

  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // fix column signs so Q is Haar distributed
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);

  Eigen::VectorXd lambda(dim);
  for (int k = 0; k < dim; ++k) lambda(k) = k + jitter(rng);
  Eigen::MatrixXd m = q * lambda.asDiagonal() * q.transpose();
  m = 0.5 * (m + m.transpose());
  return eigendecompose(m, tol);
}

bool same_matrix(const SymmetricSpectrum& a, const SymmetricSpectrum& b, double eps) {
  return a.dim() == b.dim() && (a.matrix - b.matrix).cwiseAbs().maxCoeff() <= eps;
}

}  // namespace morsecup

#include "morsecup/errors.hpp"
#include "morsecup/spectrum.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace morsecup;

namespace {

void check_orthonormal(const SymmetricSpectrum& s) {
  const Eigen::MatrixXd gram = s.eigenvectors.transpose() * s.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(s.dim(), s.dim())).norm() < 1e-10);
  const Eigen::MatrixXd rebuilt = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
  CHECK((rebuilt - s.matrix).norm() < 1e-10);
  for (int k = 1; k < s.dim(); ++k) CHECK(s.eigenvalues(k) > s.eigenvalues(k - 1));
}

}  // namespace

TEST_CASE("2x2 eigenvalues match the closed form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng);
    Eigen::Matrix2d m;
    m << a, b, b, c;
    const double mid = (a + c) / 2, radius = std::hypot((a - c) / 2, b);
    if (radius < 1e-3) continue;
    const auto s = eigendecompose(m);
    CHECK(s.eigenvalues(0) == doctest::Approx(mid - radius).epsilon(1e-12));
    CHECK(s.eigenvalues(1) == doctest::Approx(mid + radius).epsilon(1e-12));
    check_orthonormal(s);
  }
}

TEST_CASE("diagonal input keeps the standard basis") {
  const auto s = eigendecompose(Eigen::Vector3d(3, 1, 2).asDiagonal().toDenseMatrix());
  CHECK(s.eigenvalues.isApprox(Eigen::Vector3d(1, 2, 3)));
  CHECK(s.eigenvector(0).isApprox(Eigen::Vector3d(0, 1, 0)));
  CHECK(s.eigenvector(1).isApprox(Eigen::Vector3d(0, 0, 1)));
  CHECK(s.eigenvector(2).isApprox(Eigen::Vector3d(1, 0, 0)));
}

TEST_CASE("sign normalization of eigenvectors") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_spectrum(3, rng());
    for (int k = 0; k < s.dim(); ++k) {
      const auto v = s.eigenvector(k);
      int i = 0;
      while (std::abs(v(i)) <= 1e-8) ++i;
      CHECK(v(i) > 0);
    }
  }
}

TEST_CASE("invalid matrices") {
  Eigen::Matrix2d nonsym;
  nonsym << 1, 2, 0, 1;
  CHECK_THROWS_AS(eigendecompose(nonsym), MorseError);
  try {
    eigendecompose(Eigen::Vector3d(1, 1, 2).asDiagonal().toDenseMatrix());
    FAIL("repeated eigenvalue accepted");
  } catch (const MorseError& e) {
    CHECK(e.code() == ErrorCode::DegenerateSpectrum);
  }
  CHECK_THROWS_AS(eigendecompose(Eigen::Vector2d(1, 1 + 1e-5).asDiagonal().toDenseMatrix()), MorseError);
}

TEST_CASE("random spectra are deterministic and well formed") {
  for (int n = 1; n <= 5; ++n) {
    const auto a = random_spectrum(n, 42);
    const auto b = random_spectrum(n, 42);
    const auto c = random_spectrum(n, 43);
    CHECK(a.dim() == n + 1);
    CHECK(same_matrix(a, b));
    CHECK_FALSE(same_matrix(a, c));
    check_orthonormal(a);
    for (int k = 0; k <= n; ++k) CHECK(std::abs(a.eigenvalues(k) - k) <= 0.3 + 1e-12);
  }
}

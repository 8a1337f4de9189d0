#include "morsecup/eigenflow.hpp"
#include "morsecup/errors.hpp"
#include "morsecup/intersections.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace morsecup;

namespace {

Eigen::VectorXd random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = g(rng);
  return v.normalized();
}

// Orthonormal basis of the tangent space p^perp.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& p) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.transpose(), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(p.size() - 1);
}

double base_value(const SymmetricSpectrum& s, const Eigen::VectorXd& x) { return 0.5 * x.dot(s.matrix * x); }

Eigen::VectorXd geodesic(const Eigen::VectorXd& p, const Eigen::VectorXd& v) {
  const double t = v.norm();
  return t < 1e-300 ? p : Eigen::VectorXd(std::cos(t) * p + std::sin(t) / t * v);
}

std::vector<std::size_t> ranks(const GradedComplex& c) {
  std::vector<std::size_t> out;
  for (const auto& h : cohomology(c)) out.push_back(h.rank);
  return out;
}

}  // namespace

TEST_CASE("critical points, names and indices") {
  const auto s = random_spectrum(3, 1);
  const auto sphere = make_datum(SpaceKind::Sphere, s, std::nullopt, "a");
  const auto proj = make_datum(SpaceKind::Projective, s, std::nullopt, "a");
  const auto line = make_datum(SpaceKind::Projective, s, VerticalFactor{-1, 0.0}, "a");
  CHECK(critical_points(sphere).size() == 8);
  CHECK(critical_points(proj).size() == 4);
  CHECK(critical_points(line).size() == 4);
  CHECK(critical_point(sphere, 2, Sheet::Minus).name == "p2-");
  CHECK(critical_point(proj, 2, Sheet::Projective).name == "[p2]");
  CHECK(critical_point(line, 2, Sheet::Projective).name == "x3^a");
  CHECK(critical_point(line, 2, Sheet::Projective).morse_index == 3);
  const auto pts = critical_points(sphere);
  CHECK(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return std::tie(a.morse_index, a.name) < std::tie(b.morse_index, b.name);
  }));
  CHECK_THROWS_AS(make_datum(SpaceKind::Sphere, s, VerticalFactor{2, 0.0}, "a"), MorseError);
  CHECK_THROWS_AS(make_datum(SpaceKind::Sphere, s, VerticalFactor{1, 1.5}, "a"), MorseError);
  CHECK_THROWS_AS(make_datum(SpaceKind::Sphere, s, std::nullopt, ""), MorseError);
}

TEST_CASE("gradient matches finite differences along geodesics") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 4; ++n) {
    const auto s = random_spectrum(n, 10 + n);
    const auto d = make_datum(SpaceKind::Sphere, s, VerticalFactor{1, 0.25}, "a");
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd p = random_unit(n + 1, rng);
      const double y = std::uniform_real_distribution<double>(-0.9, 0.9)(rng);
      const Eigen::VectorXd grad = gradient(d, Point{p, y});
      CHECK(std::abs(grad.head(n + 1).dot(p)) < 1e-12);
      const Eigen::VectorXd v = tangent_basis(p) * random_unit(n, rng);
      const double h = 1e-5;
      const double fd = (base_value(s, geodesic(p, h * v)) - base_value(s, geodesic(p, -h * v))) / (2 * h);
      CHECK(grad.head(n + 1).dot(v) == doctest::Approx(fd).epsilon(1e-6));
      CHECK(grad(n + 1) == doctest::Approx(2 * (y - 0.25)).epsilon(1e-12));
      CHECK(function_value(d, Point{p, y}) == doctest::Approx(base_value(s, p) + (y - 0.25) * (y - 0.25)));
    }
  }
}

TEST_CASE("Hessian spectrum and Morse index agree with a finite-difference Hessian") {
  for (int n = 1; n <= 4; ++n) {
    const auto s = random_spectrum(n, 30 + n);
    const auto d = make_datum(SpaceKind::Sphere, s, std::nullopt, "a");
    for (const auto& cp : critical_points(d)) {
      const Eigen::VectorXd p = critical_location(d, cp).base;
      CHECK(gradient(d, critical_location(d, cp)).norm() < 1e-12);
      const Eigen::MatrixXd t = tangent_basis(p);
      const double h = 1e-4;
      Eigen::MatrixXd fd(n, n);
      auto f = [&](const Eigen::VectorXd& v) { return base_value(s, geodesic(p, t * v)); };
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Eigen::VectorXd ei = Eigen::VectorXd::Zero(n), ej = Eigen::VectorXd::Zero(n);
          ei(i) = h;
          ej(j) = h;
          fd(i, j) = (f(ei + ej) - f(ei - ej) - f(ej - ei) + f(-ei - ej)) / (4 * h * h);
        }
      Eigen::VectorXd expected = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(fd).eigenvalues();
      Eigen::VectorXd got = hessian_eigenvalues(d, cp);
      std::sort(got.data(), got.data() + got.size());
      REQUIRE(got.size() == n);
      CHECK((got - expected).norm() < 1e-5);
      CHECK((got.array() < 0).count() == cp.morse_index);
    }
  }
  const auto line = make_datum(SpaceKind::Projective, random_spectrum(2, 1), VerticalFactor{-1, 0.0}, "a");
  for (const auto& cp : critical_points(line))
    CHECK((hessian_eigenvalues(line, cp).array() < 0).count() == cp.morse_index);
}

TEST_CASE("flow: group property, stays on the space, decreases f") {
  std::mt19937_64 rng(6);
  const auto s = random_spectrum(3, 77);
  const auto d = make_datum(SpaceKind::Sphere, s, VerticalFactor{-1, 0.1}, "a");
  for (int trial = 0; trial < 20; ++trial) {
    const Point p{random_unit(4, rng), 0.1 + 0.2 * (trial % 3 - 1) * 0.01};
    const double a = 0.3 * (trial % 4), b = 0.7;
    const Point ab = flow(d, flow(d, p, a), b);
    const Point direct = flow(d, p, a + b);
    CHECK((ab.base - direct.base).norm() < 1e-10);
    CHECK(*ab.y == doctest::Approx(*direct.y));
    CHECK(direct.base.norm() == doctest::Approx(1.0));
    CHECK(function_value(d, direct) <= function_value(d, p) + 1e-12);
    // derivative at t = 0 is minus the gradient
    const double h = 1e-6;
    const Eigen::VectorXd fd = (flow(d, p, h).embedded() - flow(d, p, -h).embedded()) / (2 * h);
    CHECK((fd + gradient(d, p)).norm() < 1e-5);
  }
}

TEST_CASE("forward limit is sign(a_k) p_k for the lowest supported k") {
  std::mt19937_64 rng(9);
  const auto s = random_spectrum(3, 5);
  const auto d = make_datum(SpaceKind::Sphere, s, std::nullopt, "a");
  for (int k = 0; k <= 3; ++k) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(4);
    for (int j = k; j <= 3; ++j) coeffs(j) = std::normal_distribution<double>()(rng);
    const Eigen::VectorXd x = (s.eigenvectors * coeffs).normalized();
    const Eigen::VectorXd limit = flow(d, Point{x, std::nullopt}, 200.0).base;
    const double sign = coeffs(k) > 0 ? 1.0 : -1.0;
    CHECK((limit - sign * s.eigenvector(k)).norm() < 1e-8);
    const Eigen::VectorXd back = flow(d, Point{x, std::nullopt}, -200.0).base;
    CHECK((back - (coeffs(3) > 0 ? 1.0 : -1.0) * s.eigenvector(3)).norm() < 1e-8);
  }
  CHECK_THROWS_AS(require_on_space(d, Point{2 * s.eigenvector(0), std::nullopt}), MorseError);
}

TEST_CASE("strata dimensions") {
  const auto s = random_spectrum(4, 3);
  for (auto space : {SpaceKind::Sphere, SpaceKind::Projective})
    for (const auto& vertical : {std::optional<VerticalFactor>{}, std::optional<VerticalFactor>{{-1, 0.0}},
                                 std::optional<VerticalFactor>{{1, 0.5}}}) {
      const auto d = make_datum(space, s, vertical, "a");
      for (const auto& cp : critical_points(d)) {
        CHECK(unstable_stratum(d, cp).dim() == cp.morse_index);
        CHECK(stable_stratum(d, cp).codim() == cp.morse_index);
      }
    }
}

TEST_CASE("cohomology of spheres and projective spaces") {
  for (int n = 1; n <= 5; ++n) {
    const auto s = random_spectrum(n, 100 + n);
    std::vector<std::size_t> sphere(n + 1, 0), proj(n + 1, 1), shifted(n + 2, 0);
    sphere.front() = sphere.back() = 1;
    shifted[1] = shifted[n + 1] = 1;
    for (auto ring : {RingTag::Z2, RingTag::Z}) {
      const auto c = build_complex(make_datum(SpaceKind::Sphere, s, std::nullopt, "a"), ring);
      CHECK(validate_differential(c).ok);
      CHECK(ranks(c) == sphere);
      for (const auto& h : cohomology(c)) CHECK(h.torsion.empty());
      CHECK(ranks(build_complex(make_datum(SpaceKind::Sphere, s, VerticalFactor{-1, 0.0}, "a"), ring)) == shifted);
    }
    CHECK(ranks(build_complex(make_datum(SpaceKind::Projective, s, std::nullopt, "a"), RingTag::Z2)) == proj);
    CHECK_THROWS_AS(build_complex(make_datum(SpaceKind::Projective, s, std::nullopt, "a"), RingTag::Z), MorseError);
  }
}

TEST_CASE("adjacent sphere critical points are joined by one orbit") {
  const auto s = random_spectrum(3, 8);
  const auto d = make_datum(SpaceKind::Sphere, s, std::nullopt, "a");
  for (int k = 0; k < 3; ++k)
    for (auto hi : {Sheet::Plus, Sheet::Minus})
      for (auto lo : {Sheet::Plus, Sheet::Minus}) {
        const auto count = connection_count(d, critical_point(d, k + 1, hi), critical_point(d, k, lo), RingTag::Z);
        CHECK((count == 1 || count == -1));
      }
}

TEST_CASE("random generic pairs") {
  for (int n = 1; n <= 4; ++n) {
    const auto [a, b] = random_generic_pair(n, 17);
    const auto [a2, b2] = random_generic_pair(n, 17);
    CHECK(same_matrix(a, a2));
    CHECK(same_matrix(b, b2));
    CHECK(general_position_check(a, b));
    CHECK(general_position_check(b, a));
    CHECK(general_position_margin(a, b) >= Tolerances{}.generic_margin);
    const auto c = random_generic_partner({a, b}, 3);
    CHECK(general_position_check(a, c));
    CHECK(general_position_check(b, c));
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(7, i));
  CHECK(seeds.size() == 1000);
}

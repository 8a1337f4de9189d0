#include "morsecup/oracle.hpp"

#include "morsecup/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace morsecup {

void validate(const OracleConfig& cfg) {
  if (!(cfg.horizon > 0.0)) throw MorseError(ErrorCode::InvalidConfig, "oracle horizon must be positive");
  if (!(cfg.step > 0.0)) throw MorseError(ErrorCode::InvalidConfig, "oracle step must be positive");
  if (cfg.samples_per_cell < 1) throw MorseError(ErrorCode::InvalidConfig, "samples_per_cell must be at least 1");
}

namespace {

int mod2(const Integer& v) { return static_cast<int>(boost::multiprecision::abs(v) % 2); }

bool vertical_diverges(const MorseDatum& d, Direction direction) {
  // forward time repels from the center exactly when the vertical term is -(y - c)^2
  return (d.vertical->sign < 0) == (direction == Direction::Forward);
}

/// e^{-tR} x evaluated on the invariant subspace spanned by `basis`, with
/// the dominant exponent shifted out so that nothing is amplified.
Eigen::VectorXd exponential_flow(const Eigen::MatrixXd& r, const Eigen::MatrixXd& basis, const Eigen::VectorXd& x,
                                 double t, double shift) {
  const Eigen::MatrixXd restricted = basis.transpose() * r * basis;
  const Eigen::MatrixXd generator =
      -t * (restricted - shift * Eigen::MatrixXd::Identity(restricted.rows(), restricted.cols()));
  const Eigen::MatrixXd e = generator.exp();
  return (basis * (e * (basis.transpose() * x))).normalized();
}

void require_same_neighborhood(const MorseDatum& a, const MorseDatum& b) {
  if (a.space != b.space || a.spectrum.dim() != b.spectrum.dim() || a.vertical.has_value() != b.vertical.has_value())
    throw MorseError(ErrorCode::MismatchedNeighborhoods, a.label + " and " + b.label + " live on different spaces");
}

void require_budget(const MorseDatum& d, const OracleConfig& cfg) {
  if (d.spectrum.dim() > cfg.max_base_dim)
    throw MorseError(ErrorCode::BudgetExhausted, "brute-force oracle limited to base dimension " +
                                                     std::to_string(cfg.max_base_dim));
}

bool verified(const std::function<CriticalPointLabel()>& classify, const CriticalPointLabel& expected) {
  try {
    return classify() == expected;
  } catch (const MorseError& e) {
    if (e.code() == ErrorCode::ExitsNeighborhood) return false;
    throw;
  }
}

}  // namespace

CriticalPointLabel classify_limit(const MorseDatum& d, const Point& x, Direction direction, const OracleConfig& cfg) {
  require_on_space(d, x);
  if (d.vertical && vertical_diverges(d, direction) && std::abs(*x.y - d.vertical->center) > cfg.eps_support)
    throw MorseError(ErrorCode::ExitsNeighborhood, "vertical coordinate leaves [-1, 1]");

  const auto& s = d.spectrum;
  const Eigen::VectorXd a = s.eigenvectors.transpose() * x.base;
  std::vector<int> support;
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a(i)) > cfg.eps_support) support.push_back(i);
  if (support.empty()) throw MorseError(ErrorCode::AmbiguousSupport, "no eigen-coefficient above eps_support");

  const int k = direction == Direction::Forward ? support.front() : support.back();
  const Sheet sheet = d.projective() ? Sheet::Projective : (a(k) > 0 ? Sheet::Plus : Sheet::Minus);
  const Eigen::VectorXd predicted = (a(k) > 0 ? 1.0 : -1.0) * s.eigenvector(k);

  // cross-check with an explicit exponential on the span of the supported
  // eigenvectors, run until the nearest other eigenvalue has decayed below eps_near
  Eigen::MatrixXd basis(a.size(), static_cast<Eigen::Index>(support.size()));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < support.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = s.eigenvector(support[j]);
    if (support[j] != k) gap = std::min(gap, std::abs(s.eigenvalues(support[j]) - s.eigenvalues(k)));
  }
  double horizon = cfg.horizon;
  if (std::isfinite(gap))
    horizon = std::max(horizon, (std::log(a.norm() / std::abs(a(k))) + std::log(10.0 / cfg.eps_near)) / gap);
  const double t = direction == Direction::Forward ? horizon : -horizon;
  const Eigen::VectorXd end = exponential_flow(s.matrix, basis, x.base, t, s.eigenvalues(k));
  double miss = (end - predicted).norm();
  if (d.projective()) miss = std::min(miss, (end + predicted).norm());
  if (miss >= cfg.eps_near)
    throw MorseError(ErrorCode::OracleMismatch, "flow at t = " + std::to_string(t) + " is " + std::to_string(miss) +
                                                    " away from the predicted limit");
  return critical_point(d, k, sheet);
}

int count_connections_bruteforce(const MorseDatum& d, const CriticalPointLabel& hi, const CriticalPointLabel& lo,
                                 const OracleConfig& cfg) {
  require_budget(d, cfg);
  if (hi.morse_index != lo.morse_index + 1)
    throw MorseError(ErrorCode::IndexGap, "index gap between " + hi.name + " and " + lo.name + " is not 1");
  if (hi.eigen_index != lo.eigen_index + 1) return 0;

  const auto& p_lo = d.spectrum.eigenvector(lo.eigen_index);
  const auto& p_hi = d.spectrum.eigenvector(hi.eigen_index);
  int count = 0;
  for (int s_lo : {1, -1}) {
    if (d.projective() && s_lo < 0) continue;  // sign patterns up to the antipodal map
    for (int s_hi : {1, -1}) {
      Point x{(double(s_lo) * p_lo + double(s_hi) * p_hi) / std::sqrt(2.0), std::nullopt};
      if (d.vertical) x.y = d.vertical->center;
      if (verified([&] { return classify_limit(d, x, Direction::Forward, cfg); }, lo) &&
          verified([&] { return classify_limit(d, x, Direction::Backward, cfg); }, hi))
        ++count;
    }
  }
  return count % 2;
}

int count_triple_bruteforce(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                            const CriticalPointLabel& z, const CriticalPointLabel& x, const CriticalPointLabel& y,
                            const OracleConfig& cfg) {
  require_same_neighborhood(gamma, alpha);
  require_same_neighborhood(gamma, beta);
  require_budget(gamma, cfg);
  if (z.morse_index != x.morse_index + y.morse_index)
    throw MorseError(ErrorCode::ExpectedDimensionNonZero, "indices of " + z.name + ", " + x.name + ", " + y.name +
                                                              " do not add up");

  // v = G c with G = (gamma_0..gamma_kz), orthogonal to alpha_i (i < kx) and beta_j (j < ky)
  const Eigen::MatrixXd g = gamma.spectrum.eigenvectors.leftCols(z.eigen_index + 1);
  Eigen::MatrixXd constraints(x.eigen_index + y.eigen_index, g.rows());
  constraints << alpha.spectrum.eigenvectors.leftCols(x.eigen_index).transpose(),
      beta.spectrum.eigenvectors.leftCols(y.eigen_index).transpose();
  const Eigen::MatrixXd a = constraints * g;

  // The line factor decouples: y(t) = c + (y - c) e^{-2 sign t}. A height is
  // feasible when it converges inside [-1, 1] in the required direction for
  // all three flows; without one the base cone cannot carry a triple point.
  if (gamma.vertical) {
    auto settles = [&](const MorseDatum& d, double h, double direction) {
      const double c = d.vertical->center;
      const double end = c + (h - c) * std::exp(-2.0 * d.vertical->sign * direction * cfg.horizon);
      return std::abs(end - c) < cfg.eps_near && std::abs(end) <= 1.0;
    };
    bool feasible = false;
    for (const auto* d : {&gamma, &alpha, &beta}) {
      const double h = d->vertical->center;
      feasible = feasible || (settles(gamma, h, -1.0) && settles(alpha, h, 1.0) && settles(beta, h, 1.0));
    }
    if (!feasible) return 0;
  }

  Eigen::MatrixXd kernel;
  if (a.rows() == 0) {
    kernel = Eigen::MatrixXd::Identity(g.cols(), g.cols());
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-9);
    if (lu.rank() == a.cols()) return 0;
    kernel = lu.kernel();
  }
  if (kernel.cols() > 1)
    throw MorseError(ErrorCode::TransversalityFailure, "oracle found a " + std::to_string(kernel.cols()) +
                                                           "-dimensional candidate cone");
  const Eigen::VectorXd v = (g * kernel.col(0)).normalized();

  std::vector<Eigen::VectorXd> bases{v};
  if (!gamma.projective()) bases.push_back(-v);
  std::vector<std::optional<double>> heights{std::nullopt};
  if (gamma.vertical) {
    heights.clear();
    for (const auto* d : {&gamma, &alpha, &beta}) {
      const double c = d->vertical->center;
      if (std::none_of(heights.begin(), heights.end(), [&](const auto& h) { return std::abs(*h - c) < 1e-12; }))
        heights.emplace_back(c);
    }
  }

  int count = 0;
  for (const auto& base : bases)
    for (const auto& h : heights) {
      const Point p{base, h};
      if (verified([&] { return classify_limit(gamma, p, Direction::Backward, cfg); }, z) &&
          verified([&] { return classify_limit(alpha, p, Direction::Forward, cfg); }, x) &&
          verified([&] { return classify_limit(beta, p, Direction::Forward, cfg); }, y))
        ++count;
    }
  return count % 2;
}

bool z_set_sample_check(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                        const OracleConfig& cfg) {
  validate(cfg);
  require_same_neighborhood(gamma, alpha);
  require_same_neighborhood(gamma, beta);
  // N is the whole closed base times [-1, 1]; without a line factor there is no boundary to touch
  if (!gamma.vertical) return true;

  std::vector<double> heights{gamma.vertical->center, alpha.vertical->center, beta.vertical->center};
  const int cells = static_cast<int>(std::ceil(2.0 / cfg.step - 1e-9));
  for (int i = 0; i <= cells; ++i) heights.push_back(std::min(1.0, -1.0 + i * cfg.step));
  for (int i = 0; i < cells; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const double lo = -1.0 + i * cfg.step;
    std::uniform_real_distribution<double> u(lo, std::min(1.0, lo + cfg.step));
    for (int j = 0; j < cfg.samples_per_cell; ++j) heights.push_back(u(rng));
  }

  std::mt19937_64 rng(derive_seed(cfg.seed, 0xba5eULL));
  std::normal_distribution<double> gauss;
  bool any_flagged = false;
  for (double h : heights) {
    Eigen::VectorXd base(gamma.spectrum.dim());
    for (int i = 0; i < base.size(); ++i) base(i) = gauss(rng);
    const Point p{base.normalized(), h};

    bool stays = true;
    const int steps = static_cast<int>(std::ceil(cfg.horizon / cfg.step - 1e-9));
    for (int i = 1; i <= steps && stays; ++i) {
      const double t = std::min(cfg.horizon, i * cfg.step);
      stays = std::abs(*flow(alpha, p, t).y) <= 1.0 && std::abs(*flow(beta, p, t).y) <= 1.0 &&
              std::abs(*flow(gamma, p, -t).y) <= 1.0;
    }
    if (!stays) continue;
    any_flagged = true;
    if (1.0 - std::abs(h) < cfg.boundary_clearance) return false;
  }
  return any_flagged;
}

OracleCounts compare_connections(const MorseDatum& d, const GradedComplex& engine, const OracleConfig& cfg) {
  OracleCounts out;
  const auto points = critical_points(d);
  for (const auto& hi : points)
    for (const auto& lo : points) {
      if (hi.morse_index != lo.morse_index + 1) continue;
      const int oracle = count_connections_bruteforce(d, hi, lo, cfg);
      const auto row = engine.find(hi.name);
      const auto col = engine.find(lo.name);
      if (!row || !col) throw MorseError(ErrorCode::SourceMismatch, "complex was not built from " + d.label);
      const int symbolic = mod2(engine.differential(col->first).get(row->second, col->second));
      out.connections[{hi.name, lo.name}] = oracle;
      if (oracle != symbolic) out.discrepancies.push_back({"connection", {hi.name, lo.name}, oracle, symbolic});
    }
  return out;
}

OracleCounts compare_triples(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                             const TripleLookup& engine, const OracleConfig& cfg) {
  OracleCounts out;
  const auto zs = critical_points(gamma);
  const auto xs = critical_points(alpha);
  const auto ys = critical_points(beta);
  for (const auto& z : zs)
    for (const auto& x : xs)
      for (const auto& y : ys) {
        if (z.morse_index != x.morse_index + y.morse_index) continue;
        const int oracle = count_triple_bruteforce(gamma, alpha, beta, z, x, y, cfg);
        const int symbolic = mod2(engine(z.name, x.name, y.name));
        out.triples[{z.name, x.name, y.name}] = oracle;
        if (oracle != symbolic) out.discrepancies.push_back({"triple", {z.name, x.name, y.name}, oracle, symbolic});
      }
  return out;
}

}  // namespace morsecup

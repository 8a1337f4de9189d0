#include "morsecup/eigenflow.hpp"

#include "morsecup/errors.hpp"
#include "morsecup/intersections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace morsecup {

std::string_view to_string(SpaceKind space) { return space == SpaceKind::Sphere ? "sphere" : "projective"; }

SpaceKind parse_space(std::string_view text) {
  if (text == "sphere") return SpaceKind::Sphere;
  if (text == "projective") return SpaceKind::Projective;
  throw MorseError(ErrorCode::InvalidConfig, "unknown space '" + std::string(text) + "'");
}

MorseDatum make_datum(SpaceKind space, SymmetricSpectrum spectrum, std::optional<VerticalFactor> vertical,
                      std::string label) {
  if (label.empty()) throw MorseError(ErrorCode::InvalidConfig, "datum label must be nonempty");
  if (vertical) {
    if (vertical->sign != 1 && vertical->sign != -1)
      throw MorseError(ErrorCode::InvalidConfig, "vertical sign must be +1 or -1");
    if (!(vertical->center > -1.0 && vertical->center < 1.0))
      throw MorseError(ErrorCode::InvalidConfig, "vertical center must lie in (-1, 1)");
  }
  return MorseDatum{space, std::move(spectrum), vertical, std::move(label)};
}

namespace {

int index_shift(const MorseDatum& d) { return d.vertical && d.vertical->sign < 0 ? 1 : 0; }

std::string point_name(const MorseDatum& d, int k, Sheet sheet) {
  const char* mark = sheet == Sheet::Plus ? "+" : sheet == Sheet::Minus ? "-" : "";
  if (!d.vertical) {
    if (sheet == Sheet::Projective) return "[p" + std::to_string(k) + "]";
    return "p" + std::to_string(k) + mark;
  }
  return "x" + std::to_string(k + index_shift(d)) + mark + "^" + d.label;
}

void require_member(const MorseDatum& d, const CriticalPointLabel& cp) {
  if (cp.eigen_index < 0 || cp.eigen_index > d.n() || (cp.sheet == Sheet::Projective) != d.projective() ||
      cp != critical_point(d, cp.eigen_index, cp.sheet))
    throw MorseError(ErrorCode::ForeignCriticalPoint, "'" + cp.name + "' is not a critical point of " + d.label);
}

}  // namespace

CriticalPointLabel critical_point(const MorseDatum& d, int eigen_index, Sheet sheet) {
  if (eigen_index < 0 || eigen_index > d.n() || (sheet == Sheet::Projective) != d.projective())
    throw MorseError(ErrorCode::ForeignCriticalPoint, "no such critical point in " + d.label);
  return {eigen_index, sheet, d.vertical.has_value(), eigen_index + index_shift(d), point_name(d, eigen_index, sheet)};
}

std::vector<CriticalPointLabel> critical_points(const MorseDatum& d) {
  std::vector<CriticalPointLabel> out;
  for (int k = 0; k <= d.n(); ++k) {
    if (d.projective()) {
      out.push_back(critical_point(d, k, Sheet::Projective));
    } else {
      out.push_back(critical_point(d, k, Sheet::Plus));
      out.push_back(critical_point(d, k, Sheet::Minus));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.morse_index, a.name) < std::tie(b.morse_index, b.name);
  });
  return out;
}

Point critical_location(const MorseDatum& d, const CriticalPointLabel& cp) {
  require_member(d, cp);
  Point p{double(cp.sign()) * d.spectrum.eigenvector(cp.eigen_index), std::nullopt};
  if (d.projective()) p.base = canonical_projective(p.base);
  if (d.vertical) p.y = d.vertical->center;
  return p;
}

void require_on_space(const MorseDatum& d, const Point& p, const Tolerances& tol) {
  if (p.base.size() != d.spectrum.dim() || p.y.has_value() != d.vertical.has_value())
    throw MorseError(ErrorCode::NotOnSpace, "point has the wrong shape");
  if (std::abs(p.base.norm() - 1.0) > tol.eps_on) throw MorseError(ErrorCode::NotOnSpace, "point is not a unit vector");
  if (p.y && std::abs(*p.y) > 1.0 + tol.eps_on)
    throw MorseError(ErrorCode::NotOnSpace, "vertical coordinate outside [-1, 1]");
}

double function_value(const MorseDatum& d, const Point& p) {
  double v = 0.5 * p.base.dot(d.spectrum.matrix * p.base);
  if (d.vertical && p.y) v += d.vertical->sign * (*p.y - d.vertical->center) * (*p.y - d.vertical->center);
  return v;
}

Eigen::VectorXd gradient(const MorseDatum& d, const Point& p) {
  const Eigen::VectorXd rx = d.spectrum.matrix * p.base;
  Eigen::VectorXd g(d.ambient_dim());
  g.head(p.base.size()) = rx - p.base.dot(rx) * p.base;
  if (d.vertical) g(g.size() - 1) = 2.0 * d.vertical->sign * (p.y.value_or(d.vertical->center) - d.vertical->center);
  return g;
}

Eigen::VectorXd hessian_eigenvalues(const MorseDatum& d, const CriticalPointLabel& cp) {
  const Point p = critical_location(d, cp);
  const Eigen::MatrixXd t = null_space(p.base.transpose(), 1e-12);
  const double two_f = p.base.dot(d.spectrum.matrix * p.base);
  const Eigen::MatrixXd h =
      t.transpose() * (d.spectrum.matrix - two_f * Eigen::MatrixXd::Identity(p.base.size(), p.base.size())) * t;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = solver.eigenvalues();
  if (d.vertical) {
    ev.conservativeResize(ev.size() + 1);
    ev(ev.size() - 1) = 2.0 * d.vertical->sign;
    std::sort(ev.data(), ev.data() + ev.size());
  }
  return ev;
}

Point flow(const MorseDatum& d, const Point& p, double t, const Tolerances& tol) {
  require_on_space(d, p, tol);
  const auto& s = d.spectrum;
  Eigen::VectorXd a = s.eigenvectors.transpose() * p.base;
  // round-off below the support threshold would otherwise take over at large |t|
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a(i)) <= tol.eps_support) a(i) = 0.0;
  Eigen::VectorXd logs(a.size());
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.size(); ++i) {
    logs(i) = a(i) == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(a(i))) - t * s.eigenvalues(i);
    top = std::max(top, logs(i));
  }
  Eigen::VectorXd b(a.size());
  for (int i = 0; i < a.size(); ++i) b(i) = a(i) == 0.0 ? 0.0 : std::copysign(std::exp(logs(i) - top), a(i));

  Point out{(s.eigenvectors * b).normalized(), std::nullopt};
  if (d.projective()) out.base = canonical_projective(out.base, tol.eps_support);
  if (d.vertical) {
    const double c = d.vertical->center;
    out.y = c + (*p.y - c) * std::exp(-2.0 * d.vertical->sign * t);
  }
  return out;
}

namespace {

LinearStratum make_stratum(const MorseDatum& d, const CriticalPointLabel& cp, StratumKind kind) {
  require_member(d, cp);
  const auto& s = d.spectrum;
  const int k = cp.eigen_index;
  const int n = d.n();
  LinearStratum st;
  st.spectrum_label = d.label;
  st.kind = kind;
  st.projective = d.projective();
  st.range_lo = kind == StratumKind::Unstable ? 0 : k;
  st.range_hi = kind == StratumKind::Unstable ? k : n;
  st.span = s.eigenvectors.middleCols(st.range_lo, st.range_hi - st.range_lo + 1);
  st.lead_index = k;
  st.lead_vector = s.eigenvector(k);
  if (!d.projective()) st.required_sign = cp.sign();

  st.orientation.resize(s.dim(), st.span.cols());
  st.orientation.col(0) = double(cp.sign()) * s.eigenvector(k);
  int col = 1;
  for (int i = st.range_lo; i <= st.range_hi; ++i)
    if (i != k) st.orientation.col(col++) = s.eigenvector(i);
  st.coorientation = kind == StratumKind::Stable ? Eigen::MatrixXd(s.eigenvectors.leftCols(k))
                                                 : Eigen::MatrixXd(s.eigenvectors.rightCols(n - k));

  if (d.vertical) {
    st.center = d.vertical->center;
    const bool repelling = d.vertical->sign < 0;
    const bool full = (kind == StratumKind::Unstable) == repelling;
    st.vertical = full ? VerticalPart::FullLine : VerticalPart::PointAtCenter;
  }
  return st;
}

}  // namespace

LinearStratum unstable_stratum(const MorseDatum& d, const CriticalPointLabel& cp) {
  return make_stratum(d, cp, StratumKind::Unstable);
}

LinearStratum stable_stratum(const MorseDatum& d, const CriticalPointLabel& cp) {
  return make_stratum(d, cp, StratumKind::Stable);
}

Integer connection_count(const MorseDatum& d, const CriticalPointLabel& hi, const CriticalPointLabel& lo, RingTag ring,
                         const Tolerances& tol) {
  require_member(d, hi);
  require_member(d, lo);
  if (hi.morse_index != lo.morse_index + 1)
    throw MorseError(ErrorCode::IndexGap, "index gap between " + hi.name + " and " + lo.name + " is not 1");
  // every orbit leaving p_{k+1} ends at p_k or further down; only adjacent pairs have isolated ones
  if (hi.eigen_index != lo.eigen_index + 1) return 0;

  if (d.projective()) {
    if (ring == RingTag::Z) throw MorseError(ErrorCode::UnsupportedRing, "integer coefficients need sphere data");
    return 0;  // two orbits, one through each sign pattern
  }
  if (ring == RingTag::Z2) return 1;

  const int k = lo.eigen_index;
  Point p{(double(lo.sign()) * d.spectrum.eigenvector(k) + double(hi.sign()) * d.spectrum.eigenvector(k + 1)) / std::sqrt(2.0),
          std::nullopt};
  if (d.vertical) p.y = d.vertical->center;
  const std::vector<CoorientedStratum> ys{cooriented_tangent(stable_stratum(d, lo), p, tol)};
  const OrientedSubspace line = intersect_oriented(oriented_tangent(unstable_stratum(d, hi), p, tol), ys, tol);
  return quotient_orientation(line, -gradient(d, p), tol).sign;
}

GradedComplex build_complex(const MorseDatum& d, RingTag ring, const Tolerances& tol) {
  if (ring == RingTag::Z && d.projective())
    throw MorseError(ErrorCode::UnsupportedRing, "integer coefficients need sphere data");
  ComplexBuilder builder(ring);
  const auto points = critical_points(d);
  for (const auto& cp : points) builder.add_generator(cp.name, cp.morse_index);
  for (const auto& hi : points)
    for (const auto& lo : points) {
      if (hi.morse_index != lo.morse_index + 1) continue;
      // the dual complex carries (-1)^k on degree-k cochains; with the
      // orientation conventions used for orbits and triple points this is
      // what makes the Leibniz rule hold over Z
      Integer m = connection_count(d, hi, lo, ring, tol);
      if (lo.morse_index % 2 == 1) m = -m;
      if (m != 0) builder.set_coefficient(lo.name, hi.name, m);
    }
  return builder.build();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr int kResampleBudget = 1000;

bool generic_with(const SymmetricSpectrum& a, const SymmetricSpectrum& b, const Tolerances& tol) {
  return general_position_check(a, b, tol) && general_position_check(b, a, tol) &&
         general_position_margin(a, b, tol) >= tol.generic_margin &&
         general_position_margin(b, a, tol) >= tol.generic_margin;
}

}  // namespace

std::pair<SymmetricSpectrum, SymmetricSpectrum> random_generic_pair(int n, std::uint64_t seed, const Tolerances& tol) {
  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    try {
      auto a = random_spectrum(n, derive_seed(seed, 2 * attempt), tol);
      auto b = random_spectrum(n, derive_seed(seed, 2 * attempt + 1), tol);
      if (generic_with(a, b, tol)) return {std::move(a), std::move(b)};
    } catch (const MorseError& e) {
      if (e.code() != ErrorCode::DegenerateSpectrum) throw;
    }
  }
  throw MorseError(ErrorCode::BudgetExhausted, "no generic pair found; delta_gap or generic_margin too strict");
}

SymmetricSpectrum random_generic_partner(const std::vector<SymmetricSpectrum>& others, std::uint64_t seed,
                                         const Tolerances& tol) {
  if (others.empty()) throw MorseError(ErrorCode::DimensionMismatch, "need at least one reference spectrum");
  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    try {
      auto b = random_spectrum(others.front().top_index(), derive_seed(seed, attempt), tol);
      if (std::all_of(others.begin(), others.end(), [&](const auto& a) { return generic_with(a, b, tol); }))
        return b;
    } catch (const MorseError& e) {
      if (e.code() != ErrorCode::DegenerateSpectrum) throw;
    }
  }
  throw MorseError(ErrorCode::BudgetExhausted, "no generic partner found");
}

}  // namespace morsecup

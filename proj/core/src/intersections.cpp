#include "morsecup/intersections.hpp"

#include "morsecup/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace morsecup {

namespace {

int sign_of(double x) { return x < 0 ? -1 : 1; }

void fold_sign(OrientedSubspace& s) {
  if (s.dim() > 0 && s.sign < 0) {
    s.basis.col(0) *= -1.0;
    s.sign = 1;
  }
}

/// Base columns padded to `ambient` rows.
Eigen::MatrixXd embed(const Eigen::MatrixXd& base, int ambient) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ambient, base.cols());
  out.topRows(base.rows()) = base;
  return out;
}

Eigen::VectorXd vertical_unit(int ambient) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(ambient);
  e(ambient - 1) = 1.0;
  return e;
}

Eigen::MatrixXd append_column(const Eigen::MatrixXd& m, const Eigen::VectorXd& v) {
  Eigen::MatrixXd out(m.rows(), m.cols() + 1);
  out << m, v;
  return out;
}

/// Determinant sign of `c`; throws when nearly singular.
int determinant_sign(const Eigen::MatrixXd& c, double eps) {
  if (c.cols() == 0) return 1;
  // same relative scale as numerical_rank; a column-normalized det shrinks with every shared large component
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(c).singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= eps * sv(0))
    throw MorseError(ErrorCode::DegenerateDeterminant,
                     "orientation frame is degenerate (condition " + std::to_string(sv(sv.size() - 1) / sv(0)) + ")");
  return sign_of(c.determinant());
}

/// Least-squares solve with a residual check.
Eigen::VectorXd solve_exact(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double eps, ErrorCode code) {
  Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  const double scale = std::max(1.0, b.norm());
  if ((a * x - b).norm() > eps * scale) throw MorseError(code, "vector is not in the expected span");
  return x;
}

Eigen::MatrixXd span_intersection(const std::vector<const Eigen::MatrixXd*>& spans, double eps_rank) {
  const int d = static_cast<int>(spans.front()->rows());
  Eigen::MatrixXd stacked(d * static_cast<int>(spans.size()), d);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Eigen::MatrixXd q = orthonormal_basis(*spans[i], eps_rank);
    stacked.middleRows(static_cast<int>(i) * d, d) = Eigen::MatrixXd::Identity(d, d) - q * q.transpose();
  }
  return null_space(stacked, eps_rank);
}

struct VerticalSlice {
  bool empty = false;
  std::optional<double> point;  // nullopt: full line (or no vertical factor)
};

VerticalSlice combine_vertical(const std::vector<const LinearStratum*>& strata, double eps) {
  VerticalSlice slice;
  for (const auto* s : strata) {
    if (s->vertical != VerticalPart::PointAtCenter) continue;
    if (slice.point && std::abs(*slice.point - s->center) > eps) return {true, std::nullopt};
    slice.point = s->center;
  }
  return slice;
}

void require_compatible(const std::vector<const LinearStratum*>& strata) {
  for (const auto* s : strata) {
    if (s->base_dim() != strata.front()->base_dim() || s->has_vertical() != strata.front()->has_vertical())
      throw MorseError(ErrorCode::DimensionMismatch, "strata live in different ambient spaces");
  }
}

}  // namespace

std::size_t numerical_rank(const Eigen::MatrixXd& m, double eps_rank) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<std::size_t>((s.array() > eps_rank * s(0)).count());
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double eps_rank) {
  const auto cols = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  if (cols == 0) return Eigen::MatrixXd(0, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto rank = static_cast<Eigen::Index>(numerical_rank(m, eps_rank));
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m, double eps_rank) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const auto rank = static_cast<Eigen::Index>(numerical_rank(m, eps_rank));
  return svd.matrixU().leftCols(rank);
}

namespace {

// Visits every pair (span{a_k..a_{k+l}}, span{b_l..b_n}); stops early when f returns false.
template <typename F>
void for_each_span_pair(const SymmetricSpectrum& a, const SymmetricSpectrum& b, F&& f) {
  if (a.dim() != b.dim()) throw MorseError(ErrorCode::DimensionMismatch, "spectra of different sizes");
  const int n = a.top_index();
  for (int k = 0; k <= n; ++k)
    for (int l = 0; k + l <= n; ++l) {
      Eigen::MatrixXd stacked(a.dim(), (l + 1) + (n - l + 1));
      stacked << a.eigenvectors.middleCols(k, l + 1), -b.eigenvectors.middleCols(l, n - l + 1);
      if (!f(k, l, stacked)) return;
    }
}

}  // namespace

bool general_position_check(const SymmetricSpectrum& a, const SymmetricSpectrum& b, const Tolerances& tol) {
  bool ok = true;
  for_each_span_pair(a, b, [&](int, int, const Eigen::MatrixXd& stacked) {
    ok = stacked.cols() - static_cast<Eigen::Index>(numerical_rank(stacked, tol.eps_rank)) == 1;
    return ok;
  });
  return ok;
}

double general_position_margin(const SymmetricSpectrum& a, const SymmetricSpectrum& b, const Tolerances& tol) {
  double margin = 1.0;
  for_each_span_pair(a, b, [&](int k, int l, const Eigen::MatrixXd& stacked) {
    const Eigen::MatrixXd kernel = null_space(stacked, tol.eps_rank);
    if (kernel.cols() != 1) {
      margin = 0.0;
      return false;
    }
    const Eigen::VectorXd v = (a.eigenvectors.middleCols(k, l + 1) * kernel.col(0).head(l + 1)).normalized();
    margin = std::min({margin, std::abs(v.dot(a.eigenvectors.col(k))), std::abs(v.dot(a.eigenvectors.col(k + l))),
                       std::abs(v.dot(b.eigenvectors.col(l)))});
    return true;
  });
  return margin;
}

bool mutual_transversality(const std::vector<Eigen::MatrixXd>& tangents, const Eigen::MatrixXd& ambient,
                           const Tolerances& tol) {
  if (tangents.size() <= 1) return true;
  const Eigen::MatrixXd qt = orthonormal_basis(ambient, tol.eps_rank);
  const auto m = qt.cols();
  std::vector<Eigen::MatrixXd> normals;
  Eigen::Index total = 0;
  for (const auto& t : tangents) {
    const Eigen::MatrixXd qi = orthonormal_basis(t, tol.eps_rank);
    // normal directions in T-coordinates: c with (T c) orthogonal to X_i
    Eigen::MatrixXd c = qi.cols() == 0 ? Eigen::MatrixXd::Identity(m, m) : null_space(qi.transpose() * qt, tol.eps_rank);
    total += c.cols();
    normals.push_back(std::move(c));
  }
  if (total > m) return false;
  Eigen::MatrixXd stacked(total, m);
  Eigen::Index row = 0;
  for (const auto& c : normals) {
    stacked.middleRows(row, c.cols()) = c.transpose();
    row += c.cols();
  }
  return static_cast<Eigen::Index>(numerical_rank(stacked, tol.eps_rank)) == total;
}

Eigen::MatrixXd manifold_tangent(const Point& p, double eps_rank) {
  const int ambient = static_cast<int>(p.base.size()) + (p.y ? 1 : 0);
  Eigen::MatrixXd base = null_space(p.base.transpose(), eps_rank);
  Eigen::MatrixXd t = embed(base, ambient);
  if (p.y) t = append_column(t, vertical_unit(ambient));
  return t;
}

namespace {

Eigen::MatrixXd base_tangent(const LinearStratum& s, const Eigen::VectorXd& q, double eps_rank) {
  const Eigen::MatrixXd qs = orthonormal_basis(s.span, eps_rank);
  const Eigen::MatrixXd coeffs = null_space(q.transpose() * qs, eps_rank);
  return qs * coeffs;
}

}  // namespace

Eigen::MatrixXd stratum_tangent(const LinearStratum& s, const Point& p, double eps_rank) {
  Eigen::MatrixXd t = embed(base_tangent(s, p.base, eps_rank), s.ambient_dim());
  if (s.vertical == VerticalPart::FullLine) t = append_column(t, vertical_unit(s.ambient_dim()));
  return t;
}

OrientedSubspace oriented_tangent(const LinearStratum& u, const Point& p, const Tolerances& tol) {
  const Eigen::MatrixXd b = base_tangent(u, p.base, tol.eps_rank);
  // (q, B) must be positive with respect to the stratum's orientation frame
  Eigen::MatrixXd frame(u.orientation.cols(), b.cols() + 1);
  frame << u.orientation.transpose() * p.base, u.orientation.transpose() * b;
  OrientedSubspace out{embed(b, u.ambient_dim()), determinant_sign(frame, tol.eps_rank)};
  if (u.vertical == VerticalPart::FullLine) out.basis = append_column(out.basis, vertical_unit(u.ambient_dim()));
  fold_sign(out);
  return out;
}

CoorientedStratum cooriented_tangent(const LinearStratum& s, const Point& p, const Tolerances& tol) {
  CoorientedStratum out;
  out.tangent = stratum_tangent(s, p, tol.eps_rank);
  out.normal_basis = embed(s.coorientation, s.ambient_dim());
  if (s.vertical == VerticalPart::PointAtCenter)
    out.normal_basis = append_column(out.normal_basis, vertical_unit(s.ambient_dim()));
  return out;
}

OrientedSubspace intersect_oriented(const OrientedSubspace& x, std::span<const CoorientedStratum> ys,
                                    const Tolerances& tol) {
  OrientedSubspace current = x;
  fold_sign(current);
  for (const auto& y : ys) {
    const auto p = current.dim();
    const auto r = y.normal_basis.cols();
    Eigen::MatrixXd system(current.ambient_dim(), p + y.tangent.cols());
    system << current.basis, -y.tangent;

    const Eigen::MatrixXd kernel = null_space(system, tol.eps_rank);
    if (kernel.cols() != p - r)
      throw MorseError(ErrorCode::TransversalityFailure, "intersection has dimension " +
                                                             std::to_string(kernel.cols()) + ", expected " +
                                                             std::to_string(p - r));
    Eigen::MatrixXd coords(p, p);
    coords.leftCols(p - r) = kernel.topRows(p);
    for (Eigen::Index i = 0; i < r; ++i) {
      // lift: v in TX with v - n_i in TY
      const Eigen::VectorXd z = solve_exact(system, y.normal_basis.col(i), 1e-7, ErrorCode::TransversalityFailure);
      coords.col(p - r + i) = z.head(p);
    }
    const int delta = determinant_sign(coords, tol.eps_rank);
    OrientedSubspace next{current.basis * kernel.topRows(p), current.sign * delta};
    fold_sign(next);
    current = std::move(next);
  }
  return current;
}

int intersection_sign(const OrientedSubspace& x, std::span<const CoorientedStratum> ys, const Tolerances& tol) {
  const OrientedSubspace point = intersect_oriented(x, ys, tol);
  if (point.dim() != 0)
    throw MorseError(ErrorCode::ExpectedDimensionNonZero, "intersection has dimension " + std::to_string(point.dim()));
  return point.sign;
}

OrientedSubspace quotient_orientation(const OrientedSubspace& m, const Eigen::VectorXd& flow, const Tolerances& tol) {
  if (flow.norm() < 1e-12) throw MorseError(ErrorCode::InvalidFlowDirection, "flow direction vanishes");
  const Eigen::MatrixXd q = orthonormal_basis(m.basis, tol.eps_rank);
  if ((flow - q * (q.transpose() * flow)).norm() > 1e-8 * flow.norm())
    throw MorseError(ErrorCode::InvalidFlowDirection, "flow direction is not tangent");
  const Eigen::MatrixXd w = q * null_space(flow.transpose() * q, tol.eps_rank);

  Eigen::MatrixXd coords(m.dim(), m.dim());
  coords.col(0) = solve_exact(m.basis, flow, 1e-8, ErrorCode::InvalidFlowDirection);
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    coords.col(j + 1) = solve_exact(m.basis, w.col(j), 1e-8, ErrorCode::InvalidFlowDirection);
  OrientedSubspace out{w, m.sign * determinant_sign(coords, tol.eps_rank)};
  fold_sign(out);
  return out;
}

int compare_orientation(const OrientedSubspace& a, const OrientedSubspace& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) throw MorseError(ErrorCode::DimensionMismatch, "orientations of different dimensions");
  Eigen::MatrixXd coords(a.dim(), b.dim());
  for (Eigen::Index j = 0; j < b.dim(); ++j)
    coords.col(j) = solve_exact(a.basis, b.basis.col(j), 1e-8, ErrorCode::DimensionMismatch);
  return a.sign * b.sign * determinant_sign(coords, tol.eps_rank);
}

bool mutual_transversality(const std::vector<LinearStratum>& strata, const Tolerances& tol) {
  if (strata.size() <= 1) return true;
  std::vector<const LinearStratum*> ptrs;
  for (const auto& s : strata) ptrs.push_back(&s);
  require_compatible(ptrs);
  const VerticalSlice slice = combine_vertical(ptrs, tol.eps_on);
  if (slice.empty) return true;

  std::vector<const Eigen::MatrixXd*> spans;
  for (const auto& s : strata) spans.push_back(&s.span);
  const Eigen::MatrixXd common = span_intersection(spans, tol.eps_rank);
  if (common.cols() == 0) return true;

  std::vector<Eigen::VectorXd> samples;
  for (Eigen::Index j = 0; j < common.cols(); ++j) samples.push_back(common.col(j).normalized());
  if (common.cols() > 1) samples.push_back(common.rowwise().sum().normalized());
  for (const auto& q : samples) {
    Point p{q, strata.front().has_vertical() ? std::optional<double>(slice.point.value_or(0.0)) : std::nullopt};
    std::vector<Eigen::MatrixXd> tangents;
    for (const auto& s : strata) tangents.push_back(stratum_tangent(s, p, tol.eps_rank));
    if (!mutual_transversality(tangents, manifold_tangent(p, tol.eps_rank), tol)) return false;
  }
  return true;
}

std::vector<IntersectionPoint> triple_intersection(const LinearStratum& u, const LinearStratum& s1,
                                                   const LinearStratum& s2, RingTag ring, const Tolerances& tol) {
  if (u.kind != StratumKind::Unstable || s1.kind != StratumKind::Stable || s2.kind != StratumKind::Stable)
    throw MorseError(ErrorCode::ShapeMismatch, "expected one unstable and two stable strata");
  const std::vector<const LinearStratum*> strata{&u, &s1, &s2};
  require_compatible(strata);
  if (ring == RingTag::Z && (u.projective || s1.projective || s2.projective))
    throw MorseError(ErrorCode::UnsupportedRing, "integer signs are only defined for sphere strata");

  const int manifold = u.manifold_dim();
  const int expected = u.dim() + s1.dim() + s2.dim() - 2 * manifold;
  if (expected != 0)
    throw MorseError(ErrorCode::ExpectedDimensionNonZero, "expected dimension " + std::to_string(expected));

  const VerticalSlice slice = combine_vertical(strata, tol.eps_on);
  if (slice.empty) return {};
  // cone dimension the base intersection must have
  const int expected_cone = (u.has_vertical() && !slice.point) ? 0 : 1;
  const Eigen::MatrixXd common = span_intersection({&u.span, &s1.span, &s2.span}, tol.eps_rank);
  if (common.cols() != expected_cone)
    throw MorseError(ErrorCode::TransversalityFailure,
                     "span intersection has dimension " + std::to_string(common.cols()) + ", expected " +
                         std::to_string(expected_cone));
  if (common.cols() == 0) return {};

  const Eigen::VectorXd v = common.col(0).normalized();
  std::vector<Eigen::VectorXd> candidates;
  if (u.projective) {
    candidates.push_back(canonical_projective(v, tol.eps_support));
  } else {
    candidates.push_back(v);
    candidates.push_back(-v);
  }

  std::vector<IntersectionPoint> out;
  for (const auto& q : candidates) {
    bool inside = true;
    for (const auto* s : strata) {
      const double coeff = q.dot(s->lead_vector);
      if (std::abs(coeff) < tol.eps_pos)
        throw MorseError(ErrorCode::TransversalityFailure, "intersection point on the boundary of a stratum");
      if (s->required_sign && sign_of(coeff) != *s->required_sign) inside = false;
    }
    if (!inside) continue;
    Point p{q, u.has_vertical() ? std::optional<double>(*slice.point) : std::nullopt};

    const std::vector<Eigen::MatrixXd> tangents{stratum_tangent(u, p, tol.eps_rank), stratum_tangent(s1, p, tol.eps_rank),
                                                stratum_tangent(s2, p, tol.eps_rank)};
    if (!mutual_transversality(tangents, manifold_tangent(p, tol.eps_rank), tol))
      throw MorseError(ErrorCode::TransversalityFailure, "strata are not mutually transverse");

    int sign = 1;
    if (ring == RingTag::Z) {
      const std::vector<CoorientedStratum> ys{cooriented_tangent(s1, p, tol), cooriented_tangent(s2, p, tol)};
      sign = intersection_sign(oriented_tangent(u, p, tol), ys, tol);
    }
    out.push_back({std::move(p), sign});
  }
  return out;
}

}  // namespace morsecup

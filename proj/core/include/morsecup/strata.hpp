#pragma once

// Points of the model spaces and the linear description of local stable and
// unstable manifolds. The base coordinates live in R^{n+1}; data with a line
// factor carry one extra vertical coordinate.

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace morsecup {

struct Point {
  Eigen::VectorXd base;
  std::optional<double> y;

  /// Base coordinates followed by y when present.
  Eigen::VectorXd embedded() const;
};

/// Unit representative whose first coordinate above `eps` is positive.
Eigen::VectorXd canonical_projective(const Eigen::VectorXd& v, double eps = 1e-10);

enum class StratumKind { Stable, Unstable };
enum class VerticalPart { None, FullLine, PointAtCenter };

/// A local (un)stable manifold in the quadratic family: the unit vectors
/// (or lines, when projective) of span{p_lo..p_hi} whose coefficient on
/// p_lead is nonzero, with sign `required_sign` on a sphere, times a
/// vertical slice.
struct LinearStratum {
  std::string spectrum_label;
  StratumKind kind = StratumKind::Stable;
  int range_lo = 0;
  int range_hi = 0;
  bool projective = false;
  Eigen::MatrixXd span;  // columns p_lo..p_hi
  int lead_index = 0;    // range_lo for stable, range_hi for unstable
  Eigen::VectorXd lead_vector;
  std::optional<int> required_sign;  // +1/-1 on spheres, none when projective
  VerticalPart vertical = VerticalPart::None;
  double center = 0.0;
  /// Ordered basis of the span: (s p_lead, remaining eigenvectors ascending).
  /// For unstable strata this fixes the orientation of the tangent spaces.
  Eigen::MatrixXd orientation;
  /// Eigenvectors p_0..p_{lo-1}; a normal frame of a stable stratum.
  Eigen::MatrixXd coorientation;

  int base_dim() const { return static_cast<int>(span.rows()); }
  bool has_vertical() const { return vertical != VerticalPart::None; }
  int ambient_dim() const { return base_dim() + (has_vertical() ? 1 : 0); }
  /// Dimension of the manifold the stratum lives in.
  int manifold_dim() const { return base_dim() - 1 + (has_vertical() ? 1 : 0); }
  int dim() const { return range_hi - range_lo + (vertical == VerticalPart::FullLine ? 1 : 0); }
  int codim() const { return manifold_dim() - dim(); }
};

}  // namespace morsecup

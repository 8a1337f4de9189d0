#pragma once

// Linear-algebraic intersection engine: rank and genericity tests,
// transversality of several subspaces, zero-dimensional triple
// intersections of strata and their orientation signs.
//
// Orientation conventions. An oriented X meeting a cooriented Y is oriented
// through 0 -> T(X cap Y) -> TX -> TX/TY -> 0: a basis u of the intersection
// is positive when (u, lifts of the normal frame of Y) is positive in TX.
// Multiple intersections are taken left to right. A quotient by a flow line
// uses 0 -> TR -> TM -> TM/R -> 0 with TR oriented along the flow.

#include "morsecup/coefficients.hpp"
#include "morsecup/spectrum.hpp"
#include "morsecup/strata.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace morsecup {

/// Orientation is sign * [basis columns]. A zero-dimensional subspace (an
/// oriented point) is just its sign; otherwise sign is kept at +1 by folding
/// it into the first column.
struct OrientedSubspace {
  Eigen::MatrixXd basis;
  int sign = 1;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return static_cast<int>(basis.rows()); }
};

/// A subspace (orientation irrelevant) with an ordered frame of a complement.
struct CoorientedStratum {
  Eigen::MatrixXd tangent;
  Eigen::MatrixXd normal_basis;
};

struct IntersectionPoint {
  Point point;
  int sign = 1;
};

std::size_t numerical_rank(const Eigen::MatrixXd& m, double eps_rank);
/// Orthonormal basis of the null space (singular values below eps_rank * max).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double eps_rank);
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m, double eps_rank);

bool general_position_check(const SymmetricSpectrum& a, const SymmetricSpectrum& b, const Tolerances& tol = {});
/// Smallest |extremal coefficient| over all span pairs checked above.
double general_position_margin(const SymmetricSpectrum& a, const SymmetricSpectrum& b, const Tolerances& tol = {});

/// Surjectivity of T -> sum_i T / T_i for subspaces T_i of `ambient`.
bool mutual_transversality(const std::vector<Eigen::MatrixXd>& tangents, const Eigen::MatrixXd& ambient,
                           const Tolerances& tol = {});
/// Transversality of strata, checked at sample points of their common
/// intersection; vacuously true when it is empty or there is one stratum.
bool mutual_transversality(const std::vector<LinearStratum>& strata, const Tolerances& tol = {});

/// Points of W^u cap W^s_1 cap W^s_2 with orientation signs (+1 over Z2).
/// Throws ExpectedDimensionNonZero, TransversalityFailure, UnsupportedRing.
std::vector<IntersectionPoint> triple_intersection(const LinearStratum& unstable, const LinearStratum& stable1,
                                                   const LinearStratum& stable2, RingTag ring,
                                                   const Tolerances& tol = {});

/// Oriented X cap Y_1 cap ... cap Y_k, intersected left to right.
OrientedSubspace intersect_oriented(const OrientedSubspace& x, std::span<const CoorientedStratum> ys,
                                    const Tolerances& tol = {});
/// Sign of a zero-dimensional intersect_oriented result.
int intersection_sign(const OrientedSubspace& x, std::span<const CoorientedStratum> ys, const Tolerances& tol = {});

OrientedSubspace quotient_orientation(const OrientedSubspace& m, const Eigen::VectorXd& flow_direction,
                                      const Tolerances& tol = {});

/// +1 if a and b orient the same subspace the same way, -1 if opposite.
int compare_orientation(const OrientedSubspace& a, const OrientedSubspace& b, const Tolerances& tol = {});

/// Tangent space of the model manifold at p, as columns in R^{ambient}.
Eigen::MatrixXd manifold_tangent(const Point& p, double eps_rank = 1e-9);
Eigen::MatrixXd stratum_tangent(const LinearStratum& s, const Point& p, double eps_rank = 1e-9);
/// Tangent of an unstable stratum at p, oriented by continuation from the critical point.
OrientedSubspace oriented_tangent(const LinearStratum& unstable, const Point& p, const Tolerances& tol = {});
/// Tangent of a stable stratum at p with its normal frame (p_0..p_{lo-1}, then e_y when the slice is a point).
CoorientedStratum cooriented_tangent(const LinearStratum& stable, const Point& p, const Tolerances& tol = {});

}  // namespace morsecup

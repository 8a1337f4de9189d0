#pragma once

// The quadratic family f(x) = <x, R x> / 2 on the unit sphere S^n or on
// RP^n, optionally times a line factor +-(y - c)^2 on [-1, 1]. Everything
// here is closed form in the eigenbasis of R.

#include "morsecup/coefficients.hpp"
#include "morsecup/complex.hpp"
#include "morsecup/spectrum.hpp"
#include "morsecup/strata.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace morsecup {

enum class SpaceKind { Sphere, Projective };

std::string_view to_string(SpaceKind space);
SpaceKind parse_space(std::string_view text);

/// Vertical term sign * (y - center)^2. sign = -1 repels from the center
/// (adds one to every Morse index), sign = +1 attracts.
struct VerticalFactor {
  int sign = -1;
  double center = 0.0;
};

struct MorseDatum {
  SpaceKind space = SpaceKind::Sphere;
  SymmetricSpectrum spectrum;
  std::optional<VerticalFactor> vertical;
  std::string label;

  int n() const { return spectrum.top_index(); }
  bool projective() const { return space == SpaceKind::Projective; }
  int ambient_dim() const { return spectrum.dim() + (vertical ? 1 : 0); }
};

/// Validates sign, center in (-1, 1) and a nonempty label (InvalidConfig).
MorseDatum make_datum(SpaceKind space, SymmetricSpectrum spectrum, std::optional<VerticalFactor> vertical,
                      std::string label);

enum class Sheet { Plus, Minus, Projective };

struct CriticalPointLabel {
  int eigen_index = 0;
  Sheet sheet = Sheet::Plus;
  bool vertical_at_center = false;
  int morse_index = 0;
  std::string name;

  int sign() const { return sheet == Sheet::Minus ? -1 : 1; }
  friend bool operator==(const CriticalPointLabel&, const CriticalPointLabel&) = default;
};

/// Sorted by Morse index, then name.
std::vector<CriticalPointLabel> critical_points(const MorseDatum& d);
CriticalPointLabel critical_point(const MorseDatum& d, int eigen_index, Sheet sheet);
Point critical_location(const MorseDatum& d, const CriticalPointLabel& cp);

/// Throws NotOnSpace unless |x| = 1 and y in [-1, 1] (within eps_on).
void require_on_space(const MorseDatum& d, const Point& p, const Tolerances& tol = {});

double function_value(const MorseDatum& d, const Point& p);
/// Riemannian gradient, embedded (tangent to the sphere, plus dF/dy).
Eigen::VectorXd gradient(const MorseDatum& d, const Point& p);
/// Eigenvalues of the Hessian at a critical point, on its tangent space.
Eigen::VectorXd hessian_eigenvalues(const MorseDatum& d, const CriticalPointLabel& cp);

/// Negative gradient flow: x -> e^{-tR}x / |e^{-tR}x|, y -> c + (y - c) e^{-2 sign t}.
/// Evaluated through eigen-coefficient logarithms so large |t| is safe.
Point flow(const MorseDatum& d, const Point& p, double t, const Tolerances& tol = {});

LinearStratum unstable_stratum(const MorseDatum& d, const CriticalPointLabel& cp);
LinearStratum stable_stratum(const MorseDatum& d, const CriticalPointLabel& cp);

/// Signed (Z) or mod-2 number of flow lines from hi down to lo.
Integer connection_count(const MorseDatum& d, const CriticalPointLabel& hi, const CriticalPointLabel& lo, RingTag ring,
                         const Tolerances& tol = {});

/// delta eta^x = (-1)^{ind x} sum_z m(z, x) eta^z, where m(z, x) counts flow lines from z to x.
GradedComplex build_complex(const MorseDatum& d, RingTag ring, const Tolerances& tol = {});

/// Two random spectra in general position, resampled from seeds derived from
/// `seed` until general_position_check and the margin test pass.
std::pair<SymmetricSpectrum, SymmetricSpectrum> random_generic_pair(int n, std::uint64_t seed,
                                                                    const Tolerances& tol = {});

/// A spectrum in general position with every spectrum in `others`.
SymmetricSpectrum random_generic_partner(const std::vector<SymmetricSpectrum>& others, std::uint64_t seed,
                                         const Tolerances& tol = {});

/// splitmix64 step, used to derive independent seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace morsecup

#pragma once

#include "morsecup/coefficients.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace morsecup {

struct GeneratorLabel {
  std::string name;
  int degree = 0;

  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

struct Cochain {
  int degree = 0;
  Vector coefficients;
};

struct CohomologyGroup {
  std::size_t rank = 0;          // dimension over Z2, free rank over Z
  std::vector<Integer> torsion;  // invariant factors > 1 (Z only)

  friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

struct DifferentialCheck {
  bool ok = true;
  int degree = -1;       // first k with d_{k+1} d_k != 0
  RingMatrix composite;  // d_{k+1} d_k at that degree
};

struct CoboundaryResult {
  bool is_coboundary = false;
  Cochain witness;  // d(witness) = x when is_coboundary
};

/// Cochain complex with degree-(+1) differentials. differential(k) maps
/// degree-k cochains to degree k+1, so it has |gens_{k+1}| rows and
/// |gens_k| columns. Degrees run from 0 to top_degree().
class GradedComplex {
 public:
  GradedComplex() = default;
  /// Takes generators and matrices in the given order; checks shapes only.
  GradedComplex(RingTag ring, std::vector<std::vector<GeneratorLabel>> generators, std::vector<RingMatrix> differentials);

  RingTag ring() const noexcept { return ring_; }
  /// Number of degrees (0 for the empty complex).
  int degree_count() const noexcept { return static_cast<int>(generators_.size()); }
  int top_degree() const noexcept { return degree_count() - 1; }

  const std::vector<GeneratorLabel>& generators(int degree) const;
  std::size_t generator_count(int degree) const;
  std::size_t total_generators() const;
  /// Differential out of `degree`; a 0-row matrix at the top degree.
  const RingMatrix& differential(int degree) const;

  /// (degree, position) of a generator by name.
  std::optional<std::pair<int, std::size_t>> find(const std::string& name) const;
  Cochain basis_cochain(const std::string& name) const;
  Cochain zero_cochain(int degree) const;

  Vector apply_differential(const Cochain& x) const;

 private:
  RingTag ring_ = RingTag::Z2;
  std::vector<std::vector<GeneratorLabel>> generators_;
  std::vector<RingMatrix> differentials_;  // one per degree, top one has 0 rows
  std::map<std::string, std::pair<int, std::size_t>> index_;
};

/// Collects generators and differential entries by label, then emits a
/// complex whose generators are ordered lexicographically within each degree.
class ComplexBuilder {
 public:
  explicit ComplexBuilder(RingTag ring) : ring_(ring) {}

  void add_generator(std::string name, int degree);
  /// Coefficient of eta^to in delta(eta^from).
  void set_coefficient(const std::string& from, const std::string& to, const Integer& value);

  GradedComplex build() const;

 private:
  RingTag ring_;
  std::map<std::string, int> degrees_;
  std::map<std::pair<std::string, std::string>, Integer> entries_;
};

DifferentialCheck validate_differential(const GradedComplex& c);

/// Per-degree cohomology; throws InvalidDifferential if d^2 != 0.
std::vector<CohomologyGroup> cohomology(const GradedComplex& c);

CoboundaryResult is_coboundary(const GradedComplex& c, const Cochain& x);

/// Cocycle representatives of a basis (Z2) or generating set (Z) of H^degree.
std::vector<Cochain> cohomology_basis(const GradedComplex& c, int degree);

/// Coordinates of the class of cocycle x in the cohomology_basis of its
/// degree (Z2 only). Unique because the basis classes are independent.
Vector class_coordinates(const GradedComplex& c, const Cochain& x);

/// Alternating sum of generator counts.
long euler_characteristic(const GradedComplex& c);

}  // namespace morsecup

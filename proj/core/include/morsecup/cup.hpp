#pragma once

// Chain-level cup products
//   eta^x cup eta^y = sum_z w(z, x, y) eta^z,
// where w counts the points of W^u(z; gamma) cap W^s(x; alpha) cap W^s(y; beta).
// The Leibniz rule and graded commutativity are checked algebraically on
// the resulting tables.

#include "morsecup/complex.hpp"
#include "morsecup/eigenflow.hpp"
#include "morsecup/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>

namespace morsecup {

enum class IsolationVerdict { StructurallyTrue, SampledTrue, Fail };
std::string_view to_string(IsolationVerdict verdict);

/// Same space, matrix and vertical term (labels are ignored).
bool same_flow(const MorseDatum& a, const MorseDatum& b);

/// StructurallyTrue when gamma's flow equals alpha's or beta's; otherwise
/// the sampled Z-set check decides. Throws MismatchedNeighborhoods.
IsolationVerdict isolation_compatible(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                                      const OracleConfig& cfg = {});

using CupKey = std::tuple<std::string, std::string, std::string>;  // (z, x, y)

class CupStructure {
 public:
  CupStructure() = default;
  /// Empty table over the generators of the three data.
  CupStructure(RingTag ring, const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta);

  RingTag ring() const noexcept { return ring_; }
  const std::string& gamma_label() const noexcept { return gamma_label_; }
  const std::string& alpha_label() const noexcept { return alpha_label_; }
  const std::string& beta_label() const noexcept { return beta_label_; }

  Integer get(const std::string& z, const std::string& x, const std::string& y) const;
  /// Throws ShapeMismatch for unknown names, InvalidDegree when ind z != ind x + ind y.
  void set(const std::string& z, const std::string& x, const std::string& y, const Integer& value);
  /// Nonzero entries only.
  const std::map<CupKey, Integer>& entries() const noexcept { return table_; }

  const std::map<std::string, int>& gamma_degrees() const noexcept { return degrees_[0]; }
  const std::map<std::string, int>& alpha_degrees() const noexcept { return degrees_[1]; }
  const std::map<std::string, int>& beta_degrees() const noexcept { return degrees_[2]; }

  IsolationVerdict verdict = IsolationVerdict::StructurallyTrue;

 private:
  RingTag ring_ = RingTag::Z2;
  std::string gamma_label_, alpha_label_, beta_label_;
  std::map<std::string, int> degrees_[3];
  std::map<CupKey, Integer> table_;
};

/// Structure constants from triple intersections. Throws IsolationFailure,
/// GenericityFailure, TransversalityFailure, UnsupportedRing.
CupStructure chain_cup(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta, RingTag ring,
                       const Tolerances& tol = {}, const OracleConfig& cfg = {});

/// Chain-level product of a cochain of c_alpha with one of c_beta, in c_gamma.
Cochain multiply(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                 const GradedComplex& c_beta, const Cochain& a, const Cochain& b);

struct IdentityCheck {
  bool ok = true;
  std::string x, y;  // first violating generator pair
  Cochain residual;
};

/// delta(x cup y) = (delta x) cup y + (-1)^{ind x} x cup (delta y) on all generator pairs.
IdentityCheck leibniz_check(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                            const GradedComplex& c_beta);

struct CommutativityCheck {
  bool ok = true;
  std::optional<CupKey> counterexample;  // (z, x, y) of w_ab
};

/// w_ab(z, x, y) = (-1)^{ind x ind y} w_ba(z, y, x). Throws SourceMismatch.
CommutativityCheck commutativity_check(const CupStructure& w_ab, const CupStructure& w_ba);

struct ClassProduct {
  Cochain product;
  bool nonzero = false;
};

/// Product of two cocycle representatives and whether its class is nonzero.
ClassProduct cohomology_cup(const CupStructure& w, const GradedComplex& c_gamma, const GradedComplex& c_alpha,
                            const GradedComplex& c_beta, const Cochain& a, const Cochain& b);

/// Copy of w with the first admissible triple changed (flipped over Z2,
/// incremented over Z). Returns the triple that was touched.
std::pair<CupStructure, CupKey> mutate_first_entry(const CupStructure& w);

}  // namespace morsecup

#pragma once

// Relative and absolute cup-length. The length is the longest chain
// eta cup mu_1 cup ... cup mu_{Y-1} that stays a nonzero class, with eta in
// H(alpha) and every mu_i a positive-degree class of the partner datum.
// Searches run over Z/2.

#include "morsecup/cup.hpp"

#include <string>
#include <vector>

namespace morsecup {

struct WitnessStep {
  std::string source;  // datum label
  int degree = 0;
  Cochain representative;
  std::vector<std::string> generators;  // support of the representative
};

struct CupLengthReport {
  int value = 0;
  std::vector<WitnessStep> witness;  // eta, then mu_1 .. mu_{value-1}
  std::string alpha_label;
  std::string partner_label;
  /// Every product of a positive-degree class of alpha with a
  /// positive-degree partner class is zero.
  bool all_products_vanish = true;
  IsolationVerdict verdict = IsolationVerdict::StructurallyTrue;
  /// 1 + number of positive degrees where the partner's cohomology is nonzero.
  int structural_bound = 0;
  bool structural_bound_ok = true;
  std::vector<std::string> notes;
};

/// Attracting type here: line factor with sign +1, or no line factor.
bool is_attracting_type(const MorseDatum& d);

/// Length search on given complexes and table (gamma slot = alpha), Z/2 only.
CupLengthReport cup_length_search(const GradedComplex& c_alpha, const GradedComplex& c_partner,
                                  const CupStructure& w);

/// Throws NotAttracting, IsolationFailure and anything chain_cup throws.
CupLengthReport relative_cup_length(const MorseDatum& alpha, const MorseDatum& attracting, const Tolerances& tol = {},
                                    const OracleConfig& cfg = {});

CupLengthReport absolute_cup_length(const MorseDatum& alpha, const MorseDatum& gamma, const Tolerances& tol = {},
                                    const OracleConfig& cfg = {});

struct BoundReport {
  int cup_length = 0;
  int critical_points = 0;
  bool satisfied = false;
};

BoundReport critical_point_bound(const MorseDatum& alpha, const MorseDatum& attracting, const Tolerances& tol = {},
                                 const OracleConfig& cfg = {});

struct RemarkReport {
  int relative = 0;
  int absolute = 0;
  bool holds = false;
};

/// absolute(alpha, gamma) <= relative(alpha, attracting).
RemarkReport remark_inequality_check(const MorseDatum& alpha, const MorseDatum& attracting, const MorseDatum& gamma,
                                     const Tolerances& tol = {}, const OracleConfig& cfg = {});

}  // namespace morsecup

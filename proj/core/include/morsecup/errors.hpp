#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morsecup {

enum class ErrorCode {
  RingMismatch,
  ShapeMismatch,
  InvalidDifferential,
  InvalidDegree,
  NotCocycle,
  NonSymmetric,
  DegenerateSpectrum,
  NotOnSpace,
  ForeignCriticalPoint,
  IndexGap,
  UnsupportedRing,
  DimensionMismatch,
  ExpectedDimensionNonZero,
  TransversalityFailure,
  GenericityFailure,
  DegenerateDeterminant,
  InvalidFlowDirection,
  BudgetExhausted,
  AmbiguousSupport,
  ExitsNeighborhood,
  MismatchedNeighborhoods,
  NotAttracting,
  IsolationFailure,
  SourceMismatch,
  OracleMismatch,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers dispatch on code().
class MorseError : public std::runtime_error {
 public:
  MorseError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace morsecup

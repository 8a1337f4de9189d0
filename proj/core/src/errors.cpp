#include "morsecup/errors.hpp"

namespace morsecup {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidDifferential: return "InvalidDifferential";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::NotCocycle: return "NotCocycle";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NotOnSpace: return "NotOnSpace";
    case ErrorCode::ForeignCriticalPoint: return "ForeignCriticalPoint";
    case ErrorCode::IndexGap: return "IndexGap";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ExpectedDimensionNonZero: return "ExpectedDimensionNonZero";
    case ErrorCode::TransversalityFailure: return "TransversalityFailure";
    case ErrorCode::GenericityFailure: return "GenericityFailure";
    case ErrorCode::DegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorCode::InvalidFlowDirection: return "InvalidFlowDirection";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::AmbiguousSupport: return "AmbiguousSupport";
    case ErrorCode::ExitsNeighborhood: return "ExitsNeighborhood";
    case ErrorCode::MismatchedNeighborhoods: return "MismatchedNeighborhoods";
    case ErrorCode::NotAttracting: return "NotAttracting";
    case ErrorCode::IsolationFailure: return "IsolationFailure";
    case ErrorCode::SourceMismatch: return "SourceMismatch";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace morsecup

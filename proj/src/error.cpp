#include "tvgs/error.hpp"

namespace tvgs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ZeroPeriod: return "ZeroPeriod";
    case ErrorCode::PeriodTooSmall: return "PeriodTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadFraction: return "BadFraction";
    case ErrorCode::BadRowCount: return "BadRowCount";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyTheta: return "EmptyTheta";
    case ErrorCode::VertexSetInvalid: return "VertexSetInvalid";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingularBandSystem: return "SingularBandSystem";
    case ErrorCode::RankDeficientSystem: return "RankDeficientSystem";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonNumeric: return "NonNumeric";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace tvgs

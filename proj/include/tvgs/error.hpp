#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvgs {

enum class ErrorCode {
  NonSquare,
  Asymmetric,
  NegativeWeight,
  ZeroPeriod,
  PeriodTooSmall,
  DimensionMismatch,
  BadFraction,
  BadRowCount,
  RankDeficient,
  IndexOutOfRange,
  EmptyTheta,
  VertexSetInvalid,
  ShapeMismatch,
  SingularBandSystem,
  RankDeficientSystem,
  ZeroReference,
  RaggedRows,
  NonNumeric,
  Empty,
  TooFewSamples,
  WindowTooLong,
  InvalidArgument,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; code() identifies
// the failure class, what() carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tvgs

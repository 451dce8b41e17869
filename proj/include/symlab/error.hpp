#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symlab {

enum class ErrorKind {
  EmptyInput,
  DimensionMismatch,
  NotUnit,
  UnsupportedDimension,
  VertexBudgetExceeded,
  GridTooCoarse,
  RejectionStall,
  DensityExceedsBound,
  TooFewPoints,
  AllAtFloor,
  AlphaTooLarge,
  RateTooAggressive,
  InvalidConfig,
  TrajectoryAborted,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace symlab

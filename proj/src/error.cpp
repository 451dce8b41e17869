#include "symlab/error.hpp"

namespace symlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::VertexBudgetExceeded: return "VertexBudgetExceeded";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::RejectionStall: return "RejectionStall";
    case ErrorKind::DensityExceedsBound: return "DensityExceedsBound";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::AllAtFloor: return "AllAtFloor";
    case ErrorKind::AlphaTooLarge: return "AlphaTooLarge";
    case ErrorKind::RateTooAggressive: return "RateTooAggressive";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::TrajectoryAborted: return "TrajectoryAborted";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace symlab

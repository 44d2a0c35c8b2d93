#include "drumcorners/errors.hpp"

namespace drumcorners {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfIntersecting: return "SelfIntersecting";
    case ErrorKind::DegenerateVertex: return "DegenerateVertex";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::DivergentConfiguration: return "DivergentConfiguration";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::UnstableResult: return "UnstableResult";
    case ErrorKind::NonPositiveTime: return "NonPositiveTime";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::UnsupportedBC: return "UnsupportedBC";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DiagonalSingularity: return "DiagonalSingularity";
    case ErrorKind::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorKind::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorKind::RobinWithZeroBeta: return "RobinWithZeroBeta";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::IllConditionedFit: return "IllConditionedFit";
    case ErrorKind::InvalidDimensions: return "InvalidDimensions";
    case ErrorKind::RootBracketFailure: return "RootBracketFailure";
    case ErrorKind::MeshFailure: return "MeshFailure";
    case ErrorKind::EigenIterationStall: return "EigenIterationStall";
    case ErrorKind::KernelUnavailable: return "KernelUnavailable";
    case ErrorKind::FitFailure: return "FitFailure";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace drumcorners

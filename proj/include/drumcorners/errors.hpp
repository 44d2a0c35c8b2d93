#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drumcorners {

enum class ErrorKind {
  // geometry
  SelfIntersecting,
  DegenerateVertex,
  ZeroArea,
  ParseError,
  ValidationError,
  // specfun
  NonPositiveArgument,
  ToleranceNotMet,
  DivergentConfiguration,
  EvaluationFailure,
  UnstableResult,
  // kernels / sector
  NonPositiveTime,
  PointOutsideDomain,
  UnsupportedBC,
  NonConvergent,
  QuadratureFailure,
  DiagonalSingularity,
  // trace
  AngleOutOfRange,
  NotSimplyConnected,
  RobinWithZeroBeta,
  TailTooLarge,
  IllConditionedFit,
  // eigensolve
  InvalidDimensions,
  RootBracketFailure,
  MeshFailure,
  EigenIterationStall,
  // harness
  KernelUnavailable,
  FitFailure,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind; every library failure is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace drumcorners

#pragma once

#include <stdexcept>
#include <string>

namespace rc {

enum class ErrorKind {
  DivisionByZero,
  DimensionMismatch,
  DivisionObstruction,
  PrecisionLoss,
  Indeterminate,
  NotUnit,
  BranchMismatch,
  InvalidArgument,
  IncomparablePair,
  DepthExceeded,
  UnsupportedDimension,
  SingularSplit,
  HyperbolicityViolated,
  GlueMismatch,
  AjObstruction,
  NotNormal,
  PivotNotUnit,
  NonConvergence,
  NonReal,
  ZeroJet,
  CertificateFailure,
  Parse,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace rc

#include "rootcharts/errors.hpp"

namespace rc {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DivisionObstruction: return "DivisionObstruction";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IncomparablePair: return "IncomparablePair";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::SingularSplit: return "SingularSplit";
    case ErrorKind::HyperbolicityViolated: return "HyperbolicityViolated";
    case ErrorKind::GlueMismatch: return "GlueMismatch";
    case ErrorKind::AjObstruction: return "AjObstruction";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::PivotNotUnit: return "PivotNotUnit";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonReal: return "NonReal";
    case ErrorKind::ZeroJet: return "ZeroJet";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rc

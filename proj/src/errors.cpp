#include "monoapprox/errors.hpp"

namespace monoapprox {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::NotReflexive: return "NotReflexive";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPositiveScale: return "NonPositiveScale";
    case ErrorKind::NegativeScale: return "NegativeScale";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::PairwiseOrderViolation: return "PairwiseOrderViolation";
    case ErrorKind::ConstantNotApproximable: return "ConstantNotApproximable";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::TargetNegative: return "TargetNegative";
    case ErrorKind::TargetNotIsotone: return "TargetNotIsotone";
    case ErrorKind::TargetNonzeroOnNS: return "TargetNonzeroOnNS";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::GeneratorNegative: return "GeneratorNegative";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::InvalidCoordinate: return "InvalidCoordinate";
    case ErrorKind::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorKind::XOutOfRange: return "XOutOfRange";
    case ErrorKind::NotMonotoneSamples: return "NotMonotoneSamples";
    case ErrorKind::NegativeSample: return "NegativeSample";
    case ErrorKind::BoundNotApplicable: return "BoundNotApplicable";
    case ErrorKind::InternalInvariantBreach: return "InternalInvariantBreach";
  }
  return "Unknown";
}

namespace {
std::string format_message(ErrorKind kind, const std::string& detail) {
  std::string msg = error_name(kind);
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(format_message(kind, detail)), kind_(kind) {}

int Error::exit_class() const {
  switch (kind_) {
    case ErrorKind::Schema:
    case ErrorKind::NotReflexive:
    case ErrorKind::NotTransitive:
      return 2;
    case ErrorKind::InternalInvariantBreach:
      return 4;
    default:
      return 3;
  }
}

void raise(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace monoapprox

#pragma once

#include <stdexcept>
#include <string>

namespace monoapprox {

// Every failure the library can signal.  The kinds fall into three classes
// that the CLI maps to exit codes: input/schema problems (2), violated
// domain preconditions (3), and internal invariant breaches (4).
enum class ErrorKind {
  // input / schema
  Schema,
  NotReflexive,
  NotTransitive,
  // domain preconditions
  SizeMismatch,
  DimensionMismatch,
  NonPositiveScale,
  NegativeScale,
  NegativeInput,
  InvalidParameter,
  IterationCapExceeded,
  NotSeparable,
  PairwiseOrderViolation,
  ConstantNotApproximable,
  RangeViolation,
  TargetNegative,
  TargetNotIsotone,
  TargetNonzeroOnNS,
  NotGenerating,
  GeneratorNegative,
  ModeMismatch,
  DegreeMismatch,
  InvalidCoordinate,
  NegativeCoordinate,
  XOutOfRange,
  NotMonotoneSamples,
  NegativeSample,
  BoundNotApplicable,
  // internal defects
  InternalInvariantBreach,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail = {});

  ErrorKind kind() const { return kind_; }

  // 2 = malformed input, 3 = domain precondition, 4 = internal defect
  int exit_class() const;

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& detail = {});

}  // namespace monoapprox

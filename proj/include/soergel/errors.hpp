#pragma once

#include <stdexcept>
#include <string>

namespace soergel {

enum class ErrorCode {
  SchemaError,
  PairingNotTwo,
  BraidFailure,
  ZeroRoot,
  IrrationalCosine,
  LengthBoundExceeded,
  NotInParabolicModule,
  MiddleMismatch,
  NonUnitriangularBar,
  InexactDivision,
  SingularTransition,
  AssumptionFailed,
  DegreeBoundTooSmall,
  NotRightFree,
  IdempotentSplitFailure,
  FieldMismatch,
  Unsupported,
  UsageError,
};

const char* error_name(ErrorCode code);

// Domain error carrying a machine-readable code. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace soergel

#include "soergel/errors.hpp"

namespace soergel {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::PairingNotTwo: return "PairingNotTwo";
    case ErrorCode::BraidFailure: return "BraidFailure";
    case ErrorCode::ZeroRoot: return "ZeroRoot";
    case ErrorCode::IrrationalCosine: return "IrrationalCosine";
    case ErrorCode::LengthBoundExceeded: return "LengthBoundExceeded";
    case ErrorCode::NotInParabolicModule: return "NotInParabolicModule";
    case ErrorCode::MiddleMismatch: return "MiddleMismatch";
    case ErrorCode::NonUnitriangularBar: return "NonUnitriangularBar";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::SingularTransition: return "SingularTransition";
    case ErrorCode::AssumptionFailed: return "AssumptionFailed";
    case ErrorCode::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorCode::NotRightFree: return "NotRightFree";
    case ErrorCode::IdempotentSplitFailure: return "IdempotentSplitFailure";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace soergel

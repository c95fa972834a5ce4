#include "pricekit/error.hpp"

namespace pricekit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyApprovalSet: return "EmptyApprovalSet";
    case ErrorCode::UnsupportedCandidate: return "UnsupportedCandidate";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidCommittee: return "InvalidCommittee";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NotLaminar: return "NotLaminar";
    case ErrorCode::NotOneStable: return "NotOneStable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::ResampleLimitExceeded: return "ResampleLimitExceeded";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::DanglingProjectReference: return "DanglingProjectReference";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace pricekit

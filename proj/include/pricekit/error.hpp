#pragma once

#include <stdexcept>
#include <string>

namespace pricekit {

enum class ErrorCode {
  EmptyApprovalSet,
  UnsupportedCandidate,
  OutOfRange,
  InvalidCommittee,
  InstanceTooLarge,
  NotLaminar,
  NotOneStable,
  PreconditionViolated,
  StepBudgetExceeded,
  ResampleLimitExceeded,
  MissingSection,
  DanglingProjectReference,
  MalformedRow,
  ParseError,
  LengthMismatch,
  ConstantVector,
  Io,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  // Offending voter / candidate / line where meaningful, otherwise -1.
  long index() const { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

}  // namespace pricekit

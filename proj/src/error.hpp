#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssa {

// Mirrors the public ssa_status codes; values must stay in sync with ssa.h.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kSchemaError = 2,
  kSemanticError = 3,
  kInvalidDimension = 4,
  kEmptySwarm = 5,
  kStepSizeTooLarge = 6,
  kNonFinitePosition = 7,
  kMassUnderflow = 8,
  kEmptyInput = 9,
  kMismatchedGrids = 10,
  kDuplicateCell = 11,
  kDomainError = 12,
  kDimensionUnsupported = 13,
  kIoError = 14,
  kUnknownObjective = 15,
  kInternal = 16,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssa

#include "error.hpp"

namespace ssa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kSchemaError: return "schema-error";
    case ErrorCode::kSemanticError: return "semantic-error";
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kEmptySwarm: return "empty-swarm";
    case ErrorCode::kStepSizeTooLarge: return "step-size-too-large";
    case ErrorCode::kNonFinitePosition: return "non-finite-position";
    case ErrorCode::kMassUnderflow: return "mass-underflow";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kMismatchedGrids: return "mismatched-grids";
    case ErrorCode::kDuplicateCell: return "duplicate-cell";
    case ErrorCode::kDomainError: return "domain-error";
    case ErrorCode::kDimensionUnsupported: return "dimension-unsupported";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kUnknownObjective: return "unknown-objective";
    case ErrorCode::kInternal: return "internal-error";
  }
  return "unknown";
}

}  // namespace ssa

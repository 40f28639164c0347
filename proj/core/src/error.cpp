#include "pndiag/error.hpp"

namespace pndiag {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
      return "E_SYNTAX";
    case ErrorCode::kSchema:
      return "E_SCHEMA";
    case ErrorCode::kUnknownPlace:
      return "E_UNKNOWN_PLACE";
    case ErrorCode::kUnknownTransition:
      return "E_UNKNOWN_TRANSITION";
    case ErrorCode::kDuplicateName:
      return "E_DUPLICATE_NAME";
    case ErrorCode::kEmptyPreset:
      return "E_EMPTY_PRESET";
    case ErrorCode::kObservableFault:
      return "E_OBSERVABLE_FAULT";
    case ErrorCode::kNegativeCount:
      return "E_NEGATIVE_COUNT";
    case ErrorCode::kNotObservable:
      return "E_NOT_OBSERVABLE";
    case ErrorCode::kDisabledTransition:
      return "E_DISABLED_TRANSITION";
    case ErrorCode::kBudgetExhausted:
      return "E_BUDGET_EXHAUSTED";
    case ErrorCode::kConfiguration:
      return "E_CONFIGURATION";
  }
  return "E_UNKNOWN";
}

}  // namespace pndiag

#include "holon/error.hpp"

namespace holon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyNerve: return "EmptyNerve";
    case ErrorCode::kMalformedNerve: return "MalformedNerve";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kEndpointMismatch: return "EndpointMismatch";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kNotBijection: return "NotBijection";
    case ErrorCode::kFiberSizeMismatch: return "FiberSizeMismatch";
    case ErrorCode::kCocycleViolation: return "CocycleViolation";
    case ErrorCode::kNotACoverMap: return "NotACoverMap";
    case ErrorCode::kNotInGroup: return "NotInGroup";
    case ErrorCode::kChartIncompatible: return "ChartIncompatible";
    case ErrorCode::kChaslesViolation: return "ChaslesViolation";
    case ErrorCode::kNotANerveMap: return "NotANerveMap";
    case ErrorCode::kModelMismatch: return "ModelMismatch";
    case ErrorCode::kBoundExceeded: return "BoundExceeded";
    case ErrorCode::kNotAnExtension: return "NotAnExtension";
    case ErrorCode::kInvalidStructure: return "InvalidStructure";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace holon

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holon {

enum class ErrorCode {
  kEmptyNerve,
  kMalformedNerve,
  kInvalidPath,
  kEndpointMismatch,
  kDisconnected,
  kSearchBudgetExceeded,
  kNotBijection,
  kFiberSizeMismatch,
  kCocycleViolation,
  kNotACoverMap,
  kNotInGroup,
  kChartIncompatible,
  kChaslesViolation,
  kNotANerveMap,
  kModelMismatch,
  kBoundExceeded,
  kNotAnExtension,
  kInvalidStructure,
  kInvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending vertex, edge, triangle or field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace holon

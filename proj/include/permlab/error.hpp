#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permlab {

enum class ErrorCode {
  InvalidInput,
  EmptySupport,
  SizeGuard,
  SizeMismatch,
  DimensionMismatch,
  InvalidPeel,
  SupportViolation,
  NonIntegral,
  NoConvergence,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permlab

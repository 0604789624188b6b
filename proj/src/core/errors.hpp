#pragma once

#include <stdexcept>
#include <string>

namespace geostab {

enum class ErrorCode {
  Domain = 1,
  ChartExit,
  DegenerateDirection,
  StationaryPoint,
  NoFiniteAlpha,
  SingularOperator,
  Unsupported,
  NotCocoercive,
  NoBound,
  InconsistentConstants,
  NonConvergence,
  Bracket,
  InvalidArgument,
  Io,
  Internal,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; mapped 1:1 onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geostab

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mugen {

enum class ErrorCode {
  InvalidConfig,
  GenerationFailed,
  SteppedTerminated,
  InvalidLevel,
  InvalidProfile,
  InvariantViolation,
  ParseError,
  SchemaMismatch,
  ChecksumMismatch,
  UnknownPolicyPreset,
  FrameOutOfRange,
  BadResolution,
  RangeOutOfBounds,
  InsufficientDiverseClips,
  DimensionMismatch,
  ZeroNormVector,
  BadK,
  ShapeMismatch,
  EmptyInput,
  ZeroDenominator,
  UsageError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every module reports failures by throwing this; the code identifies the
// failure class, the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mugen

#include "mugen/error.hpp"

namespace mugen {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::SteppedTerminated: return "SteppedTerminated";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::UnknownPolicyPreset: return "UnknownPolicyPreset";
    case ErrorCode::FrameOutOfRange: return "FrameOutOfRange";
    case ErrorCode::BadResolution: return "BadResolution";
    case ErrorCode::RangeOutOfBounds: return "RangeOutOfBounds";
    case ErrorCode::InsufficientDiverseClips: return "InsufficientDiverseClips";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroNormVector: return "ZeroNormVector";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace mugen

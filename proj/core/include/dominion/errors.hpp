#pragma once

#include <stdexcept>
#include <string>

namespace dominion {

// Error identifiers carried across the library and surfaced by the CLI as
// machine-readable {code, message, path} objects (exit code 2).
enum class ErrorCode {
  NonHermitianInput,
  AlphaOutOfRange,
  DimensionMismatch,
  ShapeMismatch,
  ConeNotIsotone,
  ConeViolation,
  PairingUnavailable,
  PreconditionViolated,
  PositivityPreconditionFailed,
  InvalidGraph,
  InvalidInstance,
  NegativePotential,
  InvalidParameters,
  SchemaViolation,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, std::string path = "")
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code), message_(std::move(message)), path_(std::move(path)) {}

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::string& path() const { return path_; }

private:
  ErrorCode code_;
  std::string message_;
  std::string path_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ConeNotIsotone: return "ConeNotIsotone";
    case ErrorCode::ConeViolation: return "ConeViolation";
    case ErrorCode::PairingUnavailable: return "PairingUnavailable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::PositivityPreconditionFailed: return "PositivityPreconditionFailed";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::NegativePotential: return "NegativePotential";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "UnknownError";
}

}  // namespace dominion

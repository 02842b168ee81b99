#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace filterscope {

enum class ErrorCode {
  InvalidArgument,
  InvalidInput,
  InvalidFilterLength,
  InvalidSegmentation,
  InvalidKind,
  OutOfRange,
  InternalConsistency,
  InvalidBank,
  InsufficientSamples,
  EmptyBand,
  DegenerateSpectrum,
  UndefinedCorrelation,
  InsufficientData,
  InvalidTarget,
  // I/O boundary
  Io,
  Malformed,
  UnsupportedVersion,
  DimensionMismatch,
  NonFinite,
  SizeMismatch,
  DigestMismatch,
  LabelOutOfRange,
  DuplicateKey,
  ValueOutOfRange,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All failures raised by the library carry a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace filterscope

#include "filterscope/error.hpp"

namespace filterscope {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::InvalidFilterLength: return "invalid-filter-length";
    case ErrorCode::InvalidSegmentation: return "invalid-segmentation";
    case ErrorCode::InvalidKind: return "invalid-kind";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::InternalConsistency: return "internal-consistency";
    case ErrorCode::InvalidBank: return "invalid-bank";
    case ErrorCode::InsufficientSamples: return "insufficient-samples";
    case ErrorCode::EmptyBand: return "empty-band";
    case ErrorCode::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorCode::UndefinedCorrelation: return "undefined-correlation";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::InvalidTarget: return "invalid-target";
    case ErrorCode::Io: return "io";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::UnsupportedVersion: return "unsupported-version";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NonFinite: return "non-finite";
    case ErrorCode::SizeMismatch: return "size-mismatch";
    case ErrorCode::DigestMismatch: return "digest-mismatch";
    case ErrorCode::LabelOutOfRange: return "label-out-of-range";
    case ErrorCode::DuplicateKey: return "duplicate-key";
    case ErrorCode::ValueOutOfRange: return "value-out-of-range";
  }
  return "unknown";
}

}  // namespace filterscope

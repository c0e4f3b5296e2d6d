#include "fastbin/bin_set.hpp"

#include <cmath>
#include <string>

#include "fastbin/errors.hpp"

namespace fastbin {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::TooFewBoundaries: return "TooFewBoundaries";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::NonFiniteBoundary: return "NonFiniteBoundary";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::JOutOfRange: return "JOutOfRange";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::EmptyTail: return "EmptyTail";
    case ErrorCode::RangeTooNarrow: return "RangeTooNarrow";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
  }
  return "Unknown";
}

BinSet validate_bins(std::vector<double> boundaries) {
  if (boundaries.size() < 2) {
    throw Error(ErrorCode::TooFewBoundaries,
                "need at least 2 boundaries, got " +
                    std::to_string(boundaries.size()));
  }
  // Bin indices are stored as uint32 with m + 1 as the top value.
  if (boundaries.size() > 0xFFFFFFFEu) {
    throw Error(ErrorCode::TooFewBoundaries, "too many boundaries");
  }
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (!std::isfinite(boundaries[i])) {
      throw Error(ErrorCode::NonFiniteBoundary,
                  "boundary " + std::to_string(i) + " is not finite", i);
    }
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (!(boundaries[i - 1] < boundaries[i])) {
      throw Error(ErrorCode::NotStrictlyIncreasing,
                  "boundaries not strictly increasing at index " +
                      std::to_string(i),
                  i);
    }
  }
  return BinSet(std::move(boundaries));
}

}  // namespace fastbin

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fastbin {

// Bin index for a query value against m bins:
//   0        x < b_1
//   i        b_i <= x < b_{i+1}, 1 <= i <= m
//   m + 1    x >= b_{m+1}
struct BinResult {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(BinResult, BinResult) = default;
};

// Validated, strictly increasing, finite boundary sequence b_1..b_{m+1}.
// Construct through validate_bins(); instances are immutable.
class BinSet {
 public:
  std::span<const double> boundaries() const noexcept { return boundaries_; }

  // Number of bins (m).
  std::size_t bin_count() const noexcept { return boundaries_.size() - 1; }

  double low() const noexcept { return boundaries_.front(); }
  double high() const noexcept { return boundaries_.back(); }

  friend BinSet validate_bins(std::vector<double> boundaries);

 private:
  explicit BinSet(std::vector<double> boundaries)
      : boundaries_(std::move(boundaries)) {}

  std::vector<double> boundaries_;
};

// Throws Error{TooFewBoundaries | NonFiniteBoundary | NotStrictlyIncreasing}.
// For NotStrictlyIncreasing the reported index is the first i (0-based) with
// boundaries[i] <= boundaries[i-1].
BinSet validate_bins(std::vector<double> boundaries);

}  // namespace fastbin

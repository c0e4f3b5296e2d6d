#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "fastbin/bin_set.hpp"

namespace fastbin::datagen {

// SplitMix64 (Steele, Lea & Flood 2014). Satisfies
// UniformRandomBitGenerator; substreams come from split().
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::string_view kAlgorithmName = "splitmix64";

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Independent generator seeded from this stream's next output.
  constexpr SplitMix64 split() noexcept { return SplitMix64((*this)()); }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

enum class Distribution { Uniform, GaussianClipped, ExponentialClipped, BimodalMixture };
enum class BoundaryStyle { UniformSpacingJitter, SortedUniformDraws, Clustered };

std::string_view to_string(Distribution d) noexcept;
std::string_view to_string(BoundaryStyle s) noexcept;
std::optional<Distribution> parse_distribution(std::string_view name) noexcept;
std::optional<BoundaryStyle> parse_boundary_style(std::string_view name) noexcept;

struct Range {
  double low = 0.0;
  double high = 1.0;
};

struct DataSpec {
  Distribution distribution = Distribution::Uniform;
  std::size_t count = 0;
  Range range;
  std::uint64_t seed = 0;
};

// m1 + 1 strictly increasing boundaries with b_1 = low and b_{m1+1} = high.
// Colliding interior draws are rejected and redrawn. Throws
// Error{RangeTooNarrow} when the range cannot hold m1 + 1 distinct doubles,
// Error{ConfigInvalid} for m1 == 0 or a bad range.
BinSet gen_boundaries(std::size_t m1, BoundaryStyle style, Range range,
                      std::uint64_t seed);

// spec.count values in [low, high). Gaussian, exponential and bimodal draws
// outside the range are rejected, never clamped.
std::vector<double> gen_values(const DataSpec& spec);

}  // namespace fastbin::datagen

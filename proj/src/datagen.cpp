#include "fastbin/datagen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "fastbin/errors.hpp"

namespace fastbin::datagen {
namespace {

void require_range(Range range) {
  if (!std::isfinite(range.low) || !std::isfinite(range.high) ||
      !(range.low < range.high)) {
    throw Error(ErrorCode::ConfigInvalid,
                "range must be finite with low < high");
  }
}

// Position of x in the total order of finite doubles (-0.0 and +0.0 tie).
std::int64_t ordered_key(double x) {
  const auto bits = std::bit_cast<std::int64_t>(x);
  return bits >= 0 ? bits : -(bits & std::numeric_limits<std::int64_t>::max());
}

// Count of doubles strictly between low < high.
std::uint64_t doubles_between(double low, double high) {
  return static_cast<std::uint64_t>(ordered_key(high)) -
         static_cast<std::uint64_t>(ordered_key(low)) - 1;
}

double standard_normal(SplitMix64& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

double uniform_in(SplitMix64& rng, Range r) {
  const double x = r.low + (r.high - r.low) * rng.uniform01();
  // Rounding can land exactly on high for wide ranges.
  return x < r.high ? x : std::nextafter(r.high, r.low);
}

template <typename Draw>
double draw_in_range(SplitMix64& rng, Range r, Draw draw) {
  for (;;) {
    const double x = draw(rng);
    if (x >= r.low && x < r.high) return x;
  }
}

double draw_value(SplitMix64& rng, Distribution d, Range r) {
  const double width = r.high - r.low;
  switch (d) {
    case Distribution::Uniform:
      return uniform_in(rng, r);
    case Distribution::GaussianClipped:
      return draw_in_range(rng, r, [&](SplitMix64& g) {
        return r.low + 0.5 * width + (width / 6.0) * standard_normal(g);
      });
    case Distribution::ExponentialClipped:
      return draw_in_range(rng, r, [&](SplitMix64& g) {
        return r.low - (width / 3.0) * std::log(1.0 - g.uniform01());
      });
    case Distribution::BimodalMixture:
      return draw_in_range(rng, r, [&](SplitMix64& g) {
        const double centre = g.uniform01() < 0.5 ? 0.25 : 0.75;
        return r.low + centre * width + (width / 12.0) * standard_normal(g);
      });
  }
  return r.low;
}

}  // namespace

std::string_view to_string(Distribution d) noexcept {
  switch (d) {
    case Distribution::Uniform: return "uniform";
    case Distribution::GaussianClipped: return "gaussian-clipped";
    case Distribution::ExponentialClipped: return "exponential-clipped";
    case Distribution::BimodalMixture: return "bimodal-mixture";
  }
  return "unknown";
}

std::string_view to_string(BoundaryStyle s) noexcept {
  switch (s) {
    case BoundaryStyle::UniformSpacingJitter: return "uniform-spacing-jitter";
    case BoundaryStyle::SortedUniformDraws: return "sorted-uniform-draws";
    case BoundaryStyle::Clustered: return "clustered";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) noexcept {
  for (auto d : {Distribution::Uniform, Distribution::GaussianClipped,
                 Distribution::ExponentialClipped,
                 Distribution::BimodalMixture}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

std::optional<BoundaryStyle> parse_boundary_style(
    std::string_view name) noexcept {
  for (auto s : {BoundaryStyle::UniformSpacingJitter,
                 BoundaryStyle::SortedUniformDraws,
                 BoundaryStyle::Clustered}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

BinSet gen_boundaries(std::size_t m1, BoundaryStyle style, Range range,
                      std::uint64_t seed) {
  if (m1 == 0) throw Error(ErrorCode::ConfigInvalid, "m1 must be >= 1");
  require_range(range);
  const std::size_t interior = m1 - 1;
  if (doubles_between(range.low, range.high) < interior) {
    throw Error(ErrorCode::RangeTooNarrow,
                "range cannot hold " + std::to_string(m1 + 1) +
                    " distinct boundaries");
  }

  SplitMix64 rng(seed);
  std::vector<double> b;
  b.reserve(m1 + 1);
  b.push_back(range.low);

  const auto accept = [&](std::set<double>& picked, double x) {
    if (x > range.low && x < range.high) picked.insert(x);
  };

  switch (style) {
    case BoundaryStyle::UniformSpacingJitter: {
      const double step = (range.high - range.low) / static_cast<double>(m1);
      std::set<double> picked;
      for (std::size_t i = 1; i <= interior; ++i) {
        const double jitter = (rng.uniform01() - 0.5) * 0.8 * step;
        accept(picked, range.low + static_cast<double>(i) * step + jitter);
      }
      // Collisions only happen when step is near the double spacing.
      while (picked.size() < interior) accept(picked, uniform_in(rng, range));
      b.insert(b.end(), picked.begin(), picked.end());
      break;
    }
    case BoundaryStyle::SortedUniformDraws: {
      std::set<double> picked;
      while (picked.size() < interior) accept(picked, uniform_in(rng, range));
      b.insert(b.end(), picked.begin(), picked.end());
      break;
    }
    case BoundaryStyle::Clustered: {
      const std::size_t clusters = std::max<std::size_t>(1, m1 / 16);
      const double width = range.high - range.low;
      std::vector<double> centres(clusters);
      for (auto& c : centres) c = uniform_in(rng, range);
      const double spread = width / (8.0 * static_cast<double>(clusters));
      std::set<double> picked;
      std::size_t attempts = 0;
      while (picked.size() < interior) {
        // Fall back to uniform draws if the clusters saturate.
        if (++attempts > 64 * (interior + 1)) {
          accept(picked, uniform_in(rng, range));
          continue;
        }
        const double c = centres[rng() % clusters];
        accept(picked, c + spread * standard_normal(rng));
      }
      b.insert(b.end(), picked.begin(), picked.end());
      break;
    }
  }
  b.push_back(range.high);
  return validate_bins(std::move(b));
}

std::vector<double> gen_values(const DataSpec& spec) {
  require_range(spec.range);
  SplitMix64 rng(spec.seed);
  std::vector<double> xs(spec.count);
  for (auto& x : xs) x = draw_value(rng, spec.distribution, spec.range);
  return xs;
}

}  // namespace fastbin::datagen

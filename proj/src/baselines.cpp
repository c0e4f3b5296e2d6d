#include "fastbin/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fastbin/errors.hpp"

namespace fastbin {
namespace {

void require_finite(double x, std::size_t index) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::NonFiniteInput,
                "non-finite query value at index " + std::to_string(index),
                index);
  }
}

inline std::uint32_t upper_rank(std::span<const double> b, double x) {
  return static_cast<std::uint32_t>(std::upper_bound(b.begin(), b.end(), x) -
                                    b.begin());
}

inline std::uint32_t scan_rank(std::span<const double> b, double x) {
  std::uint32_t i = 0;
  while (i < b.size() && b[i] <= x) ++i;
  return i;
}

}  // namespace

BinResult binary_search_bin(const BinSet& bins, double x) {
  require_finite(x, 0);
  return BinResult{upper_rank(bins.boundaries(), x)};
}

BinResult linear_search_bin(const BinSet& bins, double x) {
  require_finite(x, 0);
  return BinResult{scan_rank(bins.boundaries(), x)};
}

void binary_search_slice(const BinSet& bins, std::span<const double> xs,
                         std::span<BinResult> out) {
  if (out.size() != xs.size()) {
    throw std::invalid_argument("binary_search_slice: output size mismatch");
  }
  const auto b = bins.boundaries();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require_finite(xs[i], i);
    out[i] = BinResult{upper_rank(b, xs[i])};
  }
}

void linear_search_slice(const BinSet& bins, std::span<const double> xs,
                         std::span<BinResult> out) {
  if (out.size() != xs.size()) {
    throw std::invalid_argument("linear_search_slice: output size mismatch");
  }
  const auto b = bins.boundaries();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require_finite(xs[i], i);
    out[i] = BinResult{scan_rank(b, xs[i])};
  }
}

std::vector<BinResult> binary_search_slice(const BinSet& bins,
                                           std::span<const double> xs) {
  std::vector<BinResult> out(xs.size());
  binary_search_slice(bins, xs, out);
  return out;
}

std::vector<BinResult> linear_search_slice(const BinSet& bins,
                                           std::span<const double> xs) {
  std::vector<BinResult> out(xs.size());
  linear_search_slice(bins, xs, out);
  return out;
}

}  // namespace fastbin

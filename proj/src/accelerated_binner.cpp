#include "fastbin/accelerated_binner.hpp"

#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace fastbin {

UniformGrid build_grid(const BinSet& bins, std::size_t extra_cells) {
  const std::size_t cells = bins.bin_count() + extra_cells;
  if (extra_cells > std::numeric_limits<std::uint32_t>::max() - 1 ||
      cells > std::numeric_limits<std::uint32_t>::max() - 1) {
    throw Error(ErrorCode::ConfigInvalid, "too many grid cells");
  }
  UniformGrid grid;
  grid.origin = bins.low();
  grid.cells = static_cast<std::uint32_t>(cells);
  grid.delta = (bins.high() - bins.low()) / static_cast<double>(cells);
  return grid;
}

AcceleratedBinner::AcceleratedBinner(BinSet bins, std::size_t extra_cells)
    : bins_(std::move(bins)),
      grid_(build_grid(bins_, extra_cells)),
      hist_(grid_.cells, 0),
      cumhist_(grid_.cells + 1, 0),
      cells_(grid_.cells + 1, Cell{0, 0}),
      lo_(bins_.low()),
      hi_(bins_.high()),
      top_(static_cast<std::uint32_t>(bins_.bin_count() + 1)) {
  const auto b = bins_.boundaries();
  for (std::size_t i = 1; i + 1 < b.size(); ++i) {
    ++hist_[grid_cell(grid_, b[i]) - 1];
  }
  cumhist_[0] = 1;
  for (std::size_t q = 0; q < hist_.size(); ++q) {
    cumhist_[q + 1] = cumhist_[q] + hist_[q];
    cells_[q + 1] = Cell{cumhist_[q], hist_[q]};
  }
}

void AcceleratedBinner::bin_slice(std::span<const double> xs,
                                  std::span<BinResult> out) const {
  if (out.size() != xs.size()) {
    throw std::invalid_argument("bin_slice: output size mismatch");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::NonFiniteInput,
                  "non-finite query value at index " + std::to_string(i), i);
    }
    out[i] = BinResult{lookup(x)};
  }
}

std::vector<BinResult> AcceleratedBinner::bin_slice(
    std::span<const double> xs) const {
  std::vector<BinResult> out(xs.size());
  bin_slice(xs, out);
  return out;
}

std::vector<BinResult> AcceleratedBinner::bin_slice_parallel(
    std::span<const double> xs, unsigned threads) const {
  std::vector<BinResult> out(xs.size());
  if (threads <= 1 || xs.size() < 2 * threads) {
    bin_slice(xs, out);
    return out;
  }
  const std::size_t chunk = (xs.size() + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(xs.size(), t * chunk);
      const std::size_t end = std::min(xs.size(), begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          bin_slice(xs.subspan(begin, end - begin),
                    std::span(out).subspan(begin, end - begin));
        } catch (const Error& e) {
          // Re-anchor the chunk-local index to the whole input.
          errors[t] = std::make_exception_ptr(
              Error(e.code(),
                    "non-finite query value at index " +
                        std::to_string(begin + e.index().value_or(0)),
                    begin + e.index().value_or(0)));
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

CaseCounts AcceleratedBinner::case_counts(std::span<const double> xs) const {
  CaseCounts counts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::NonFiniteInput,
                  "non-finite query value at index " + std::to_string(i), i);
    }
    if (x < lo_ || x >= hi_) {
      ++counts.h0;
      continue;
    }
    switch (cells_[grid_cell(grid_, x)].count) {
      case 0: ++counts.h0; break;
      case 1: ++counts.h1; break;
      case 2: ++counts.h2; break;
      default: ++counts.h_gt2; break;
    }
  }
  return counts;
}

}  // namespace fastbin

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fastbin/bin_set.hpp"
#include "fastbin/errors.hpp"
#include "fastbin/uniform_grid.hpp"

namespace fastbin {

// Per-query dispatch tallies; out-of-range queries count as `h0`.
struct CaseCounts {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  std::size_t h_gt2 = 0;

  std::size_t total() const noexcept { return h0 + h1 + h2 + h_gt2; }
  friend bool operator==(const CaseCounts&, const CaseCounts&) = default;
};

/// Non-uniform binner backed by a uniform shadow grid.
///
/// Precompute places every interior boundary b_2..b_m into a grid cell and
/// stores the per-cell count (hist) and its prefix sum starting at 1
/// (cumhist). A query maps x to its cell q in constant time; the boundaries
/// sharing that cell are the contiguous run b_{r+1}..b_{r+h} with
/// r = cumhist[q], h = hist[q], and the answer is r plus the number of
/// those boundaries that are <= x.
///
/// Immutable after construction and safe for concurrent queries.
class AcceleratedBinner {
 public:
  AcceleratedBinner(BinSet bins, std::size_t extra_cells = 0);

  const BinSet& bins() const noexcept { return bins_; }
  const UniformGrid& grid() const noexcept { return grid_; }

  // hist()[q-1] = h_q for q = 1..cells.
  std::span<const std::uint32_t> hist() const noexcept { return hist_; }
  // cumhist()[q-1] = s_q for q = 1..cells+1; s_1 = 1, s_{cells+1} = m.
  std::span<const std::uint32_t> cumhist() const noexcept { return cumhist_; }

  // Throws Error{NonFiniteInput} for NaN or infinity.
  BinResult bin_value(double x) const {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::NonFiniteInput, "non-finite query value");
    }
    return BinResult{lookup(x)};
  }

  // Writes bin_value(xs[i]) into out[i]; out.size() must equal xs.size().
  // Throws Error{NonFiniteInput} carrying the first offending index.
  void bin_slice(std::span<const double> xs, std::span<BinResult> out) const;
  std::vector<BinResult> bin_slice(std::span<const double> xs) const;

  // Same results as bin_slice, split into contiguous chunks over `threads`
  // workers.
  std::vector<BinResult> bin_slice_parallel(std::span<const double> xs,
                                            unsigned threads) const;

  CaseCounts case_counts(std::span<const double> xs) const;

 private:
  struct Cell {
    std::uint32_t base;   // r = s_q
    std::uint32_t count;  // h = h_q
  };

  std::uint32_t lookup(double x) const noexcept {
    const double* b = bins_.boundaries().data();
    if (x < lo_) return 0;
    if (x >= hi_) return top_;
    const Cell cell = cells_[grid_cell(grid_, x)];
    switch (cell.count) {
      case 0:
        return cell.base;
      case 1:
        return cell.base + (x >= b[cell.base]);
      case 2:
        if (x >= b[cell.base + 1]) return cell.base + 2;
        if (x < b[cell.base]) return cell.base;
        return cell.base + 1;
      default: {
        const double* first = b + cell.base;
        return cell.base + static_cast<std::uint32_t>(
                               std::upper_bound(first, first + cell.count, x) -
                               first);
      }
    }
  }

  BinSet bins_;
  UniformGrid grid_;
  std::vector<std::uint32_t> hist_;
  std::vector<std::uint32_t> cumhist_;
  std::vector<Cell> cells_;  // indexed by q, slot 0 unused
  double lo_;
  double hi_;
  std::uint32_t top_;  // m + 1
};

inline AcceleratedBinner precompute(BinSet bins, std::size_t extra_cells = 0) {
  return AcceleratedBinner(std::move(bins), extra_cells);
}

}  // namespace fastbin

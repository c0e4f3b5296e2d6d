#pragma once

#include <cstddef>
#include <cstdint>

#include "fastbin/bin_set.hpp"

namespace fastbin {

// Uniform shadow grid over [b_1, b_{m+1}] with `cells` equal-width cells.
struct UniformGrid {
  double origin = 0.0;
  double delta = 1.0;
  std::uint32_t cells = 1;
};

// cells = m + extra_cells, origin = b_1, delta = (b_{m+1} - b_1) / cells.
UniformGrid build_grid(const BinSet& bins, std::size_t extra_cells);

// 1-based cell of x: floor((x - origin) / delta) + 1, clamped into
// [1, cells]. Monotone non-decreasing in x. Both precompute and queries use
// this function, so rounding in the division never breaks consistency.
inline std::uint32_t grid_cell(const UniformGrid& grid, double x) noexcept {
  const double t = (x - grid.origin) / grid.delta;
  if (!(t >= 0.0)) return 1;
  if (t >= static_cast<double>(grid.cells)) return grid.cells;
  const auto q = static_cast<std::uint32_t>(t) + 1;
  return q > grid.cells ? grid.cells : q;
}

}  // namespace fastbin

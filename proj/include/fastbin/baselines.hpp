#pragma once

#include <span>
#include <vector>

#include "fastbin/bin_set.hpp"

namespace fastbin {

// Reference binners: both return |{ i : b_i <= x }|, the same contract as
// AcceleratedBinner. Non-finite x throws Error{NonFiniteInput}.

// std::upper_bound over the full boundary array, O(lg m).
BinResult binary_search_bin(const BinSet& bins, double x);

// Left-to-right scan, O(m).
BinResult linear_search_bin(const BinSet& bins, double x);

void binary_search_slice(const BinSet& bins, std::span<const double> xs,
                         std::span<BinResult> out);
void linear_search_slice(const BinSet& bins, std::span<const double> xs,
                         std::span<BinResult> out);

std::vector<BinResult> binary_search_slice(const BinSet& bins,
                                           std::span<const double> xs);
std::vector<BinResult> linear_search_slice(const BinSet& bins,
                                           std::span<const double> xs);

}  // namespace fastbin

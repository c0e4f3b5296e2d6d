#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "fastbin/datagen.hpp"

namespace fastbin::bench {

enum class Method { Proposed, Binary, Linear };
std::string_view to_string(Method m) noexcept;

struct BenchConfig {
  std::vector<std::size_t> m_values;
  // Oversampling sweep for experiment 2. Empty means 0..m+1 for each m.
  // Ignored by experiment 1, which always runs with k = 0.
  std::vector<std::size_t> k_values;
  std::size_t n = 2'000'000;
  std::size_t runs = 30;
  std::vector<datagen::Distribution> distributions{
      datagen::Distribution::Uniform};
  datagen::BoundaryStyle boundary_style =
      datagen::BoundaryStyle::SortedUniformDraws;
  std::uint64_t seed = 1;
  bool include_linear = false;
};

// Throws Error{ConfigInvalid}: empty m/distribution lists, m == 0,
// runs < 3, n < 10^4.
void validate(const BenchConfig& config);

struct CaseFractions {
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f_gt2 = 0.0;
};

struct BenchRow {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  datagen::Distribution distribution = datagen::Distribution::Uniform;
  Method method = Method::Proposed;
  double median_ns = 0.0;  // whole bin_slice call
  double min_ns = 0.0;
  double max_ns = 0.0;
  double precompute_ns = 0.0;  // proposed rows only, 0 otherwise
  double speedup_vs_binary = 1.0;
  // Proposed(k = 0) median over this row's median; experiment 2 only.
  double speedup_vs_k0 = 1.0;
  CaseFractions fractions;  // dispatch mix of the row's (m, k) structure
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

// Speedup over binary search as m grows (m1 = m2, k = 0). For every
// (m, distribution) emits proposed and binary rows, plus linear when
// requested. Throws Error{OracleMismatch} if any engine disagrees with
// binary search before timing starts.
BenchReport run_experiment_1(const BenchConfig& config);

// Oversampling sweep on fixed data per m. Emits one binary row and one
// proposed row per k for every (m, distribution); k = 0 is always timed.
BenchReport run_experiment_2(const BenchConfig& config);

CaseFractions measure_case_fractions(
    std::size_t m1, std::size_t k, datagen::Distribution distribution,
    std::size_t n, std::uint64_t seed,
    datagen::BoundaryStyle style = datagen::BoundaryStyle::SortedUniformDraws);

inline constexpr std::string_view kCsvHeader =
    "m,k,n,distribution,method,median_ns,min_ns,max_ns,precompute_ns,"
    "speedup_vs_binary,f0,f1,f2,f_gt2";

// Header line then one row per BenchRow, LF endings.
void write_csv(const BenchReport& report, std::ostream& out);

}  // namespace fastbin::bench

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fastbin::analysis {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// m1 boundaries distributed over m2 grid cells, every weak composition
// equally likely.
struct OccupancyModel {
  std::uint64_t m1 = 1;
  std::uint64_t m2 = 1;
};

// Throws Error{DegenerateModel} unless m1 >= 1 and m2 >= 1.
OccupancyModel make_model(std::uint64_t m1, std::uint64_t m2);

// Binomial coefficient with the counting conventions used by the slot
// formulas: (n choose 0) = 1 for any n, 0 when k < 0 or k > n >= 0.
BigInt binomial(std::int64_t n, std::int64_t k);

// C = (m1 + m2 - 1 choose m1): number of weak compositions of m1 into m2 parts.
BigInt count_compositions(const OccupancyModel& model);

// C_j = (m2 + m1 - (j + 2) choose m1 - j). Summed over all compositions,
// the number of cells holding exactly j is m2 * C_j.
// Throws Error{JOutOfRange} when j > m1.
BigInt count_slot_value(const OccupancyModel& model, std::uint64_t j);

// C_j / C as an exact fraction.
BigRational exact_slot_probability(const OccupancyModel& model,
                                   std::uint64_t j);

// log10(C) via lgamma, for models too large to print exactly.
double log10_compositions(const OccupancyModel& model);

inline constexpr std::uint64_t kMaxEnumerable = 10'000'000;

/// Streams every length-m2 non-negative sequence summing to m1 exactly once,
/// in reverse lexicographic order: (m1,0,..,0) first, (0,..,0,m1) last.
///
///   CompositionEnumerator e(model);
///   while (e.next()) use(e.current());
///
/// Throws Error{TooLargeToEnumerate} when C exceeds kMaxEnumerable.
class CompositionEnumerator {
 public:
  explicit CompositionEnumerator(const OccupancyModel& model);

  bool next();
  std::span<const std::uint32_t> current() const noexcept { return parts_; }

 private:
  std::vector<std::uint32_t> parts_;
  bool started_ = false;
  bool done_ = false;
};

struct SlotDistribution {
  std::vector<double> probs;  // P_0 .. P_{m1}
  double mu_all = 0.0;        // m1 / m2
  double p_tail = 0.0;        // sum_{j >= 3} P_j
  std::optional<double> mu_gt2;  // empty when the tail is empty (m1 <= 2)
};

// P_0 = (m2 - 1) / (m1 + m2 - 1), P_{j+1} = (m1 - j) / (m2 + m1 - (j + 2)) P_j.
// For m1 + m2 <= 64 every P_j is also checked against C_j / C to 1e-12
// (Error{OracleMismatch} on disagreement).
// Throws Error{DegenerateModel} when m2 < 2.
SlotDistribution slot_probabilities(const OccupancyModel& model);

// Mean cell occupancy conditioned on occupancy > 2:
//   (mu_all - P_1 - 2 P_2) / (1 - P_0 - P_1 - P_2).
// Throws Error{EmptyTail} when no cell can hold more than 2 (m1 <= 2).
double mean_gt2(const OccupancyModel& model);

struct SpeedupEstimate {
  double t_bs = 0.0;   // n lg m1
  double t_p = 0.0;    // n (P_0 + 2 P_1 + 3 P_2 + (1 + lg mu_gt2) P)
  double ratio = 0.0;  // t_bs / t_p
};

SpeedupEstimate theoretical_speedup(const OccupancyModel& model,
                                    std::uint64_t n);

}  // namespace fastbin::analysis

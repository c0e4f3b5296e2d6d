#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "fastbin/analysis.hpp"
#include "fastbin/errors.hpp"

using namespace fastbin;
using namespace fastbin::analysis;

namespace {

std::vector<std::vector<std::uint32_t>> enumerate_all(std::uint64_t m1,
                                                      std::uint64_t m2) {
  std::vector<std::vector<std::uint32_t>> rows;
  CompositionEnumerator e(make_model(m1, m2));
  while (e.next()) rows.emplace_back(e.current().begin(), e.current().end());
  return rows;
}

ErrorCode error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::ConfigInvalid;
}

}  // namespace

TEST(Counts, Compositions) {
  EXPECT_EQ(count_compositions(make_model(3, 3)), 10);
  EXPECT_EQ(count_compositions(make_model(1, 1)), 1);
  EXPECT_EQ(count_compositions(make_model(5, 4)), 56);
}

TEST(Counts, SlotValues) {
  const auto m33 = make_model(3, 3);
  EXPECT_EQ(count_slot_value(m33, 0), 4);
  EXPECT_EQ(count_slot_value(m33, 1), 3);
  EXPECT_EQ(count_slot_value(m33, 2), 2);
  EXPECT_EQ(count_slot_value(m33, 3), 1);
  for (std::uint64_t m2 = 1; m2 <= 9; ++m2) {
    EXPECT_EQ(count_slot_value(make_model(7, m2), 7), 1) << m2;
  }
  // 40 slots of value 2 across the 56 compositions of 5 into 4 parts.
  EXPECT_EQ(count_slot_value(make_model(5, 4), 2), 10);
}

TEST(Counts, Errors) {
  EXPECT_EQ(error_of([] { count_slot_value(make_model(3, 3), 4); }),
            ErrorCode::JOutOfRange);
  EXPECT_EQ(error_of([] { make_model(0, 3); }), ErrorCode::DegenerateModel);
  EXPECT_EQ(error_of([] { make_model(3, 0); }), ErrorCode::DegenerateModel);
}

TEST(Counts, BinomialConventions) {
  EXPECT_EQ(binomial(-1, 0), 1);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(64, 32), BigInt("1832624140942590534"));
  EXPECT_EQ(binomial(100, 50),
            BigInt("100891344545564193334812497256"));
}

TEST(Enumeration, SmallExample) {
  const auto rows = enumerate_all(3, 3);
  ASSERT_EQ(rows.size(), 10u);
  const std::set<std::vector<std::uint32_t>> unique(rows.begin(), rows.end());
  EXPECT_EQ(unique.size(), 10u);
  EXPECT_TRUE(unique.count({3, 0, 0}));
  EXPECT_TRUE(unique.count({1, 1, 1}));
  EXPECT_TRUE(unique.count({0, 2, 1}));
  EXPECT_TRUE(unique.count({0, 0, 3}));
}

TEST(Enumeration, TwoCells) {
  const auto rows = enumerate_all(1, 2);
  EXPECT_EQ(rows, (std::vector<std::vector<std::uint32_t>>{{1, 0}, {0, 1}}));
  EXPECT_EQ(enumerate_all(4, 3).size(), 15u);
  EXPECT_EQ(enumerate_all(6, 1),
            (std::vector<std::vector<std::uint32_t>>{{6}}));
}

TEST(Enumeration, EverySequenceValidAndDistinct) {
  for (std::uint64_t m1 = 1; m1 <= 7; ++m1) {
    for (std::uint64_t m2 = 1; m2 <= 6; ++m2) {
      const auto rows = enumerate_all(m1, m2);
      std::set<std::vector<std::uint32_t>> unique;
      for (const auto& r : rows) {
        ASSERT_EQ(r.size(), m2);
        std::uint64_t s = 0;
        for (auto v : r) s += v;
        ASSERT_EQ(s, m1);
        unique.insert(r);
      }
      EXPECT_EQ(unique.size(), rows.size());
      EXPECT_EQ(BigInt(rows.size()), count_compositions(make_model(m1, m2)));
    }
  }
}

TEST(Enumeration, GuardsSize) {
  EXPECT_EQ(error_of([] { CompositionEnumerator e(make_model(30, 30)); }),
            ErrorCode::TooLargeToEnumerate);
}

TEST(Identities, GridCountsExact) {
  // sum_j C_j = C and m1 C = m2 sum_j j C_j.
  for (std::uint64_t m1 = 1; m1 <= 20; ++m1) {
    for (std::uint64_t m2 = 1; m2 <= 20; ++m2) {
      const auto model = make_model(m1, m2);
      BigInt sum = 0, weighted = 0;
      for (std::uint64_t j = 0; j <= m1; ++j) {
        const BigInt cj = count_slot_value(model, j);
        sum += cj;
        weighted += cj * j;
      }
      const BigInt c = count_compositions(model);
      ASSERT_EQ(sum, c) << m1 << "," << m2;
      ASSERT_EQ(c * m1, weighted * m2) << m1 << "," << m2;
    }
  }
}

TEST(Identities, EnumerationMatchesSlotCounts) {
  for (std::uint64_t m1 = 1; m1 <= 20; ++m1) {
    for (std::uint64_t m2 = 1; m2 <= 20; ++m2) {
      const auto model = make_model(m1, m2);
      const BigInt c = count_compositions(model);
      if (c > 100'000) continue;
      std::vector<std::uint64_t> slots(m1 + 1, 0);
      std::uint64_t rows = 0;
      CompositionEnumerator e(model);
      while (e.next()) {
        ++rows;
        for (auto v : e.current()) ++slots[v];
      }
      ASSERT_EQ(BigInt(rows), c);
      std::uint64_t total = 0;
      for (std::uint64_t j = 0; j <= m1; ++j) {
        ASSERT_EQ(BigInt(slots[j]), count_slot_value(model, j) * m2)
            << m1 << "," << m2 << " j=" << j;
        total += slots[j];
      }
      ASSERT_EQ(BigInt(total), c * m2);
    }
  }
}

TEST(SlotProbabilities, SmallExample) {
  const SlotDistribution d = slot_probabilities(make_model(3, 3));
  ASSERT_EQ(d.probs.size(), 4u);
  EXPECT_NEAR(d.probs[0], 0.4, 1e-15);
  EXPECT_NEAR(d.probs[1], 0.3, 1e-15);
  EXPECT_NEAR(d.probs[2], 0.2, 1e-15);
  EXPECT_NEAR(d.p_tail, 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(d.mu_all, 1.0);
  ASSERT_TRUE(d.mu_gt2);
  EXPECT_NEAR(*d.mu_gt2, 3.0, 1e-12);
  EXPECT_EQ(exact_slot_probability(make_model(3, 3), 0), BigRational(2, 5));
}

TEST(SlotProbabilities, RecurrenceMatchesClosedForm) {
  for (std::uint64_t m1 = 1; m1 <= 62; ++m1) {
    for (std::uint64_t m2 = 2; m1 + m2 <= 64; ++m2) {
      const auto model = make_model(m1, m2);
      const SlotDistribution d = slot_probabilities(model);
      for (std::uint64_t j = 0; j <= m1; ++j) {
        const BigRational exact(count_slot_value(model, j),
                                count_compositions(model));
        ASSERT_NEAR(d.probs[j], static_cast<double>(exact), 1e-12)
            << m1 << "," << m2 << " j=" << j;
      }
    }
  }
}

TEST(SlotProbabilities, DistributionInvariants) {
  for (std::uint64_t m1 : {1u, 2u, 3u, 10u, 100u, 1000u, 100000u}) {
    for (std::uint64_t m2 : {2u, 3u, 7u, 100u, 2000u, 200000u}) {
      const SlotDistribution d = slot_probabilities(make_model(m1, m2));
      // Kahan sums: m2 = 2 has 10^5 equal terms.
      double sum = 0.0, sum_c = 0.0, mean = 0.0;
      for (std::size_t j = 0; j < d.probs.size(); ++j) {
        const double y = d.probs[j] - sum_c;
        const double t = sum + y;
        sum_c = (t - sum) - y;
        sum = t;
        mean += static_cast<double>(j) * d.probs[j];
      }
      EXPECT_NEAR(sum, 1.0, 1e-12) << m1 << "," << m2;
      EXPECT_NEAR(d.mu_all, static_cast<double>(m1) / m2, 1e-12);
      EXPECT_NEAR(mean, d.mu_all, 1e-9 * std::max(1.0, d.mu_all));
      for (std::size_t j = 0; j + 1 < d.probs.size(); ++j) {
        // Subnormal tail values lose the precision to stay distinct.
        if (d.probs[j + 1] < std::numeric_limits<double>::min()) break;
        if (m2 >= 3) {
          ASSERT_LT(d.probs[j + 1], d.probs[j]) << m1 << "," << m2 << " " << j;
        } else {
          ASSERT_LE(d.probs[j + 1], d.probs[j]);
        }
      }
    }
  }
}

TEST(SlotProbabilities, Limits) {
  const SlotDistribution square = slot_probabilities(make_model(1000000, 1000000));
  EXPECT_NEAR(square.probs[0], 0.5, 1e-5);
  EXPECT_NEAR(square.probs[1], 0.25, 1e-5);
  EXPECT_NEAR(square.probs[2], 0.125, 1e-5);
  const SlotDistribution doubled =
      slot_probabilities(make_model(1000000, 2000000));
  EXPECT_NEAR(doubled.probs[0], 2.0 / 3.0, 1e-5);
  EXPECT_NEAR(doubled.probs[1], 2.0 / 9.0, 1e-5);
  EXPECT_NEAR(doubled.probs[2], 2.0 / 27.0, 1e-5);
  EXPECT_GT(doubled.probs[0] + doubled.probs[1] + doubled.probs[2], 0.95);
  EXPECT_NEAR(*doubled.mu_gt2, 3.5, 1e-3);
}

TEST(SlotProbabilities, RejectsSingleCell) {
  EXPECT_EQ(error_of([] { slot_probabilities(make_model(3, 1)); }),
            ErrorCode::DegenerateModel);
}

TEST(MeanGt2, SmallExampleMatchesEnumeration) {
  // Mean of slot values > 2 over all enumerated compositions, exactly.
  for (std::uint64_t m1 = 3; m1 <= 9; ++m1) {
    for (std::uint64_t m2 = 2; m2 <= 7; ++m2) {
      std::uint64_t count = 0, total = 0;
      CompositionEnumerator e(make_model(m1, m2));
      while (e.next()) {
        for (auto v : e.current()) {
          if (v > 2) {
            ++count;
            total += v;
          }
        }
      }
      ASSERT_GT(count, 0u);
      EXPECT_NEAR(mean_gt2(make_model(m1, m2)),
                  static_cast<double>(total) / count, 1e-9)
          << m1 << "," << m2;
    }
  }
  EXPECT_NEAR(mean_gt2(make_model(3, 3)), 3.0, 1e-12);
}

TEST(MeanGt2, TailFormMatchesDirectMean) {
  for (std::uint64_t m : {5u, 50u, 500u}) {
    const SlotDistribution d = slot_probabilities(make_model(m, m));
    double extra = 0.0;
    for (std::size_t j = 1; j + 3 < d.probs.size(); ++j) {
      extra += static_cast<double>(j) * d.probs[j + 3];
    }
    EXPECT_NEAR(*d.mu_gt2, 3.0 + extra / d.p_tail, 1e-9) << m;
  }
}

TEST(MeanGt2, Bounds) {
  for (std::uint64_t m = 4; m <= 4096; m = m < 64 ? m + 1 : m * 2 - 7) {
    const SlotDistribution d = slot_probabilities(make_model(m, m));
    const double mu = *d.mu_gt2;
    EXPECT_GT(mu, 3.0) << m;
    EXPECT_LT(mu, 3.0 + d.mu_all / d.p_tail) << m;
    EXPECT_LT(mu, 4.0) << m;
  }
  EXPECT_LT(mean_gt2(make_model(4096, 4096)), 4.0);
  // More cells push the conditional mean down towards 3.
  EXPECT_LT(mean_gt2(make_model(100, 1000000)), 3.001);
  EXPECT_GE(mean_gt2(make_model(100, 1000000)), 3.0);
}

TEST(MeanGt2, EmptyTail) {
  EXPECT_EQ(error_of([] { mean_gt2(make_model(2, 5)); }), ErrorCode::EmptyTail);
  EXPECT_FALSE(slot_probabilities(make_model(2, 5)).mu_gt2.has_value());
}

TEST(TheoreticalSpeedup, SmallExample) {
  const SpeedupEstimate e = theoretical_speedup(make_model(3, 3), 1);
  EXPECT_NEAR(e.t_bs, 1.584962500721156, 1e-12);
  EXPECT_NEAR(e.t_p, 1.8584962500721156, 1e-12);
  EXPECT_NEAR(e.ratio, 0.8528198540404127, 1e-12);
}

TEST(TheoreticalSpeedup, RatioIndependentOfN) {
  const auto model = make_model(512, 1024);
  const SpeedupEstimate one = theoretical_speedup(model, 1);
  const SpeedupEstimate many = theoretical_speedup(model, 1000000);
  EXPECT_NEAR(many.t_p, one.t_p * 1e6, 1e-6);
  EXPECT_NEAR(many.ratio, one.ratio, 1e-12);
}

TEST(TheoreticalSpeedup, PublishedRegimes) {
  // Square grid: t_p -> 1.75 n and ratio ~ 5 at m = 512.
  EXPECT_NEAR(theoretical_speedup(make_model(100000, 100000), 1).t_p, 1.75,
              1e-4);
  const SpeedupEstimate square = theoretical_speedup(make_model(512, 512), 1);
  EXPECT_NEAR(square.ratio, 5.14, 0.05);
  // Doubled grid.
  const SpeedupEstimate doubled = theoretical_speedup(make_model(512, 1024), 1);
  EXPECT_NEAR(doubled.t_p, 1.4375, 1e-3);
  EXPECT_NEAR(doubled.ratio, 6.26, 0.05);
}

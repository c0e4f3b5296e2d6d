#include "fastbin/analysis.hpp"

#include <cmath>
#include <string>

#include "fastbin/errors.hpp"

namespace fastbin::analysis {

OccupancyModel make_model(std::uint64_t m1, std::uint64_t m2) {
  if (m1 < 1 || m2 < 1) {
    throw Error(ErrorCode::DegenerateModel,
                "model needs m1 >= 1 and m2 >= 1, got m1=" +
                    std::to_string(m1) + " m2=" + std::to_string(m2));
  }
  return OccupancyModel{m1, m2};
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k == 0) return 1;
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  // result stays an exact binomial coefficient after every step.
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt count_compositions(const OccupancyModel& model) {
  const auto m1 = static_cast<std::int64_t>(model.m1);
  const auto m2 = static_cast<std::int64_t>(model.m2);
  return binomial(m1 + m2 - 1, m1);
}

BigInt count_slot_value(const OccupancyModel& model, std::uint64_t j) {
  if (j > model.m1) {
    throw Error(ErrorCode::JOutOfRange,
                "slot value " + std::to_string(j) + " exceeds m1=" +
                    std::to_string(model.m1));
  }
  const auto m1 = static_cast<std::int64_t>(model.m1);
  const auto m2 = static_cast<std::int64_t>(model.m2);
  const auto jj = static_cast<std::int64_t>(j);
  return binomial(m2 + m1 - (jj + 2), m1 - jj);
}

BigRational exact_slot_probability(const OccupancyModel& model,
                                   std::uint64_t j) {
  return BigRational(count_slot_value(model, j), count_compositions(model));
}

double log10_compositions(const OccupancyModel& model) {
  const double n = static_cast<double>(model.m1 + model.m2 - 1);
  const double k = static_cast<double>(model.m1);
  return (std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) /
         std::log(10.0);
}

CompositionEnumerator::CompositionEnumerator(const OccupancyModel& model) {
  if (model.m1 > 0xFFFFFFFFu || count_compositions(model) > kMaxEnumerable) {
    throw Error(ErrorCode::TooLargeToEnumerate,
                "more than " + std::to_string(kMaxEnumerable) +
                    " compositions for m1=" + std::to_string(model.m1) +
                    " m2=" + std::to_string(model.m2));
  }
  parts_.assign(model.m2, 0);
  parts_[0] = static_cast<std::uint32_t>(model.m1);
}

bool CompositionEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  // Rightmost non-zero part that is not the last one.
  std::size_t i = parts_.size() - 1;
  while (i > 0 && parts_[i - 1] == 0) --i;
  if (i == 0) {
    done_ = true;
    return false;
  }
  --i;
  const std::uint32_t tail = parts_.back();
  parts_.back() = 0;
  --parts_[i];
  parts_[i + 1] = tail + 1;
  return true;
}

SlotDistribution slot_probabilities(const OccupancyModel& model) {
  if (model.m1 < 1 || model.m2 < 2) {
    throw Error(ErrorCode::DegenerateModel,
                "slot probabilities need m1 >= 1 and m2 >= 2, got m1=" +
                    std::to_string(model.m1) +
                    " m2=" + std::to_string(model.m2));
  }
  const double m1 = static_cast<double>(model.m1);
  const double m2 = static_cast<double>(model.m2);

  SlotDistribution dist;
  dist.probs.resize(model.m1 + 1);
  dist.probs[0] = (m2 - 1.0) / (m1 + m2 - 1.0);
  for (std::uint64_t j = 0; j < model.m1; ++j) {
    const double jd = static_cast<double>(j);
    dist.probs[j + 1] = (m1 - jd) / (m2 + m1 - (jd + 2.0)) * dist.probs[j];
  }

  if (model.m1 + model.m2 <= 64) {
    for (std::uint64_t j = 0; j <= model.m1; ++j) {
      const double exact =
          static_cast<double>(exact_slot_probability(model, j));
      if (std::abs(exact - dist.probs[j]) > 1e-12) {
        throw Error(ErrorCode::OracleMismatch,
                    "recurrence disagrees with C_j/C at j=" +
                        std::to_string(j));
      }
    }
  }

  const auto p = [&](std::size_t j) {
    return j < dist.probs.size() ? dist.probs[j] : 0.0;
  };
  dist.mu_all = m1 / m2;
  double tail = 0.0;
  for (std::size_t j = 3; j < dist.probs.size(); ++j) tail += dist.probs[j];
  dist.p_tail = tail;
  if (tail > 0.0) {
    dist.mu_gt2 = (dist.mu_all - p(1) - 2.0 * p(2)) / tail;
  }
  return dist;
}

double mean_gt2(const OccupancyModel& model) {
  const SlotDistribution dist = slot_probabilities(model);
  if (!dist.mu_gt2) {
    throw Error(ErrorCode::EmptyTail,
                "no cell can hold more than 2 boundaries when m1=" +
                    std::to_string(model.m1));
  }
  return *dist.mu_gt2;
}

SpeedupEstimate theoretical_speedup(const OccupancyModel& model,
                                    std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::ConfigInvalid, "n must be >= 1");
  const SlotDistribution dist = slot_probabilities(model);
  if (!dist.mu_gt2) {
    throw Error(ErrorCode::EmptyTail,
                "no cell can hold more than 2 boundaries when m1=" +
                    std::to_string(model.m1));
  }
  const double nd = static_cast<double>(n);
  const auto& p = dist.probs;
  SpeedupEstimate est;
  est.t_bs = nd * std::log2(static_cast<double>(model.m1));
  est.t_p = nd * (p[0] + 2.0 * p[1] + 3.0 * p[2] +
                  (1.0 + std::log2(*dist.mu_gt2)) * dist.p_tail);
  est.ratio = est.t_bs / est.t_p;
  return est;
}

}  // namespace fastbin::analysis

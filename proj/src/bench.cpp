#include "fastbin/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <string>

#include "fastbin/accelerated_binner.hpp"
#include "fastbin/baselines.hpp"
#include "fastbin/errors.hpp"

namespace fastbin::bench {
namespace {

using Clock = std::chrono::steady_clock;

constexpr datagen::Range kRange{0.0, 1.0};

struct Timing {
  double median_ns = 0.0;
  double min_ns = 0.0;
  double max_ns = 0.0;
};

Timing summarize(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  Timing t;
  t.min_ns = samples.front();
  t.max_ns = samples.back();
  t.median_ns = n % 2 ? samples[n / 2]
                      : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  return t;
}

template <typename F>
double time_ns(F&& f) {
  const auto start = Clock::now();
  f();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::nano>(stop - start).count();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0) {
  datagen::SplitMix64 rng(seed ^ (a * 0xD1B54A32D192ED03ull) ^
                          (b * 0x8CB92BA72F3D8DD7ull));
  return rng();
}

CaseFractions fractions_of(const CaseCounts& c) {
  const double total = static_cast<double>(c.total());
  if (total == 0.0) return CaseFractions{1.0, 0.0, 0.0, 0.0};
  return CaseFractions{static_cast<double>(c.h0) / total,
                       static_cast<double>(c.h1) / total,
                       static_cast<double>(c.h2) / total,
                       static_cast<double>(c.h_gt2) / total};
}

void verify_against_binary(std::span<const BinResult> expected,
                           std::span<const BinResult> got,
                           std::string_view engine, std::size_t m,
                           std::size_t k) {
  if (!std::equal(expected.begin(), expected.end(), got.begin(), got.end())) {
    throw Error(ErrorCode::OracleMismatch,
                std::string(engine) + " disagrees with binary search at m=" +
                    std::to_string(m) + " k=" + std::to_string(k));
  }
}

double median_precompute_ns(const BinSet& bins, std::size_t k,
                            std::size_t runs) {
  std::vector<double> samples;
  samples.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    samples.push_back(time_ns([&] {
      const AcceleratedBinner acc(bins, k);
      // Keep the construction observable.
      if (acc.cumhist().empty()) throw std::logic_error("empty cumhist");
    }));
  }
  return summarize(std::move(samples)).median_ns;
}

BenchRow make_row(std::size_t m, std::size_t k, const BenchConfig& config,
                  datagen::Distribution dist, Method method, Timing t,
                  CaseFractions fractions) {
  BenchRow row;
  row.m = m;
  row.k = k;
  row.n = config.n;
  row.distribution = dist;
  row.method = method;
  row.median_ns = t.median_ns;
  row.min_ns = t.min_ns;
  row.max_ns = t.max_ns;
  row.fractions = fractions;
  return row;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Proposed: return "proposed";
    case Method::Binary: return "binary";
    case Method::Linear: return "linear";
  }
  return "unknown";
}

void validate(const BenchConfig& config) {
  if (config.m_values.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "m list is empty");
  }
  if (config.distributions.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "distribution list is empty");
  }
  if (std::find(config.m_values.begin(), config.m_values.end(), 0u) !=
      config.m_values.end()) {
    throw Error(ErrorCode::ConfigInvalid, "m values must be >= 1");
  }
  if (config.runs < 3) {
    throw Error(ErrorCode::ConfigInvalid,
                "runs must be >= 3, got " + std::to_string(config.runs));
  }
  if (config.n < 10'000) {
    throw Error(ErrorCode::ConfigInvalid,
                "n must be >= 10000, got " + std::to_string(config.n));
  }
}

BenchReport run_experiment_1(const BenchConfig& config) {
  validate(config);
  BenchReport report;
  for (const std::size_t m : config.m_values) {
    const BinSet bins = datagen::gen_boundaries(
        m, config.boundary_style, kRange, derive_seed(config.seed, m));
    for (const auto dist : config.distributions) {
      const std::vector<double> xs = datagen::gen_values(
          {dist, config.n, kRange,
           derive_seed(config.seed, m, static_cast<std::uint64_t>(dist) + 1)});
      const AcceleratedBinner acc(bins, 0);
      const CaseFractions fractions = fractions_of(acc.case_counts(xs));

      std::vector<BinResult> expected(xs.size());
      std::vector<BinResult> out(xs.size());
      binary_search_slice(bins, xs, expected);
      acc.bin_slice(xs, out);
      verify_against_binary(expected, out, "proposed", m, 0);
      if (config.include_linear) {
        linear_search_slice(bins, xs, out);
        verify_against_binary(expected, out, "linear", m, 0);
      }

      std::vector<double> proposed_ns, binary_ns, linear_ns;
      // Warm-up pass populates caches and branch history.
      acc.bin_slice(xs, out);
      binary_search_slice(bins, xs, out);
      for (std::size_t r = 0; r < config.runs; ++r) {
        proposed_ns.push_back(time_ns([&] { acc.bin_slice(xs, out); }));
        binary_ns.push_back(
            time_ns([&] { binary_search_slice(bins, xs, out); }));
        if (config.include_linear) {
          linear_ns.push_back(
              time_ns([&] { linear_search_slice(bins, xs, out); }));
        }
      }

      const Timing binary = summarize(binary_ns);
      BenchRow proposed_row =
          make_row(m, 0, config, dist, Method::Proposed,
                   summarize(proposed_ns), fractions);
      proposed_row.precompute_ns = median_precompute_ns(bins, 0, config.runs);
      proposed_row.speedup_vs_binary =
          binary.median_ns / proposed_row.median_ns;
      report.rows.push_back(proposed_row);
      report.rows.push_back(
          make_row(m, 0, config, dist, Method::Binary, binary, fractions));
      if (config.include_linear) {
        BenchRow row = make_row(m, 0, config, dist, Method::Linear,
                                summarize(linear_ns), fractions);
        row.speedup_vs_binary = binary.median_ns / row.median_ns;
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

BenchReport run_experiment_2(const BenchConfig& config) {
  validate(config);
  BenchReport report;
  for (const std::size_t m : config.m_values) {
    std::vector<std::size_t> ks = config.k_values;
    if (ks.empty()) {
      for (std::size_t k = 0; k <= m + 1; ++k) ks.push_back(k);
    }
    if (std::find(ks.begin(), ks.end(), 0u) == ks.end()) {
      ks.insert(ks.begin(), 0);
    }

    const BinSet bins = datagen::gen_boundaries(
        m, config.boundary_style, kRange, derive_seed(config.seed, m));
    for (const auto dist : config.distributions) {
      const std::vector<double> xs = datagen::gen_values(
          {dist, config.n, kRange,
           derive_seed(config.seed, m, static_cast<std::uint64_t>(dist) + 1)});

      std::vector<AcceleratedBinner> engines;
      engines.reserve(ks.size());
      for (const std::size_t k : ks) engines.emplace_back(bins, k);

      std::vector<BinResult> expected(xs.size());
      std::vector<BinResult> out(xs.size());
      binary_search_slice(bins, xs, expected);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        engines[i].bin_slice(xs, out);
        verify_against_binary(expected, out, "proposed", m, ks[i]);
      }

      std::vector<double> binary_ns;
      std::vector<std::vector<double>> proposed_ns(ks.size());
      binary_search_slice(bins, xs, out);
      for (const auto& e : engines) e.bin_slice(xs, out);
      for (std::size_t r = 0; r < config.runs; ++r) {
        binary_ns.push_back(
            time_ns([&] { binary_search_slice(bins, xs, out); }));
        for (std::size_t i = 0; i < ks.size(); ++i) {
          proposed_ns[i].push_back(
              time_ns([&] { engines[i].bin_slice(xs, out); }));
        }
      }

      const Timing binary = summarize(binary_ns);
      const std::size_t k0 = static_cast<std::size_t>(
          std::find(ks.begin(), ks.end(), 0u) - ks.begin());
      const Timing base = summarize(proposed_ns[k0]);
      report.rows.push_back(
          make_row(m, 0, config, dist, Method::Binary, binary,
                   fractions_of(engines[k0].case_counts(xs))));
      for (std::size_t i = 0; i < ks.size(); ++i) {
        BenchRow row = make_row(m, ks[i], config, dist, Method::Proposed,
                                summarize(proposed_ns[i]),
                                fractions_of(engines[i].case_counts(xs)));
        row.precompute_ns = median_precompute_ns(bins, ks[i], config.runs);
        row.speedup_vs_binary = binary.median_ns / row.median_ns;
        row.speedup_vs_k0 = base.median_ns / row.median_ns;
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

CaseFractions measure_case_fractions(std::size_t m1, std::size_t k,
                                     datagen::Distribution distribution,
                                     std::size_t n, std::uint64_t seed,
                                     datagen::BoundaryStyle style) {
  const BinSet bins =
      datagen::gen_boundaries(m1, style, kRange, derive_seed(seed, m1));
  const std::vector<double> xs = datagen::gen_values(
      {distribution, n, kRange,
       derive_seed(seed, m1, static_cast<std::uint64_t>(distribution) + 1)});
  const AcceleratedBinner acc(bins, k);
  return fractions_of(acc.case_counts(xs));
}

void write_csv(const BenchReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out.precision(10);
  for (const BenchRow& r : report.rows) {
    out << r.m << ',' << r.k << ',' << r.n << ','
        << datagen::to_string(r.distribution) << ',' << to_string(r.method)
        << ',' << r.median_ns << ',' << r.min_ns << ',' << r.max_ns << ','
        << r.precompute_ns << ',' << r.speedup_vs_binary << ','
        << r.fractions.f0 << ',' << r.fractions.f1 << ',' << r.fractions.f2
        << ',' << r.fractions.f_gt2 << '\n';
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

}  // namespace fastbin::bench

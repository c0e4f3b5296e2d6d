#include "fastbin/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "fastbin/accelerated_binner.hpp"
#include "fastbin/analysis.hpp"
#include "fastbin/baselines.hpp"
#include "fastbin/errors.hpp"
#include "fastbin/text_io.hpp"

namespace fastbin::cli {
namespace {

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  return e.code() == ErrorCode::OracleMismatch ? kExitInternalError
                                               : kExitUserError;
}

// Runs `body`, mapping library and I/O failures onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUserError;
  }
}

// Writes to `path`, or to `fallback` when path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::optional<std::size_t> parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::optional<std::vector<std::size_t>> parse_index_list(
    const std::string& text) {
  std::vector<std::size_t> values;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_size(std::string_view(text).substr(0, dots));
    const auto hi = parse_size(std::string_view(text).substr(dots + 2));
    if (!lo || !hi || *lo > *hi) return std::nullopt;
    for (std::size_t v = *lo; v <= *hi; ++v) values.push_back(v);
    return values;
  }
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const auto v = parse_size(rest.substr(0, comma));
    if (!v) return std::nullopt;
    values.push_back(*v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return values;
}

int cmd_bin(const BinOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<double> raw = read_numbers(opts.boundaries_path);
    const BinSet bins = validate_bins(std::move(raw));
    const std::vector<double> xs = read_numbers(opts.values_path);

    std::vector<BinResult> results(xs.size());
    switch (opts.method) {
      case bench::Method::Proposed:
        AcceleratedBinner(bins, opts.extra_cells).bin_slice(xs, results);
        break;
      case bench::Method::Binary:
        binary_search_slice(bins, xs, results);
        break;
      case bench::Method::Linear:
        linear_search_slice(bins, xs, results);
        break;
    }
    emit(opts.out_path, out,
         [&](std::ostream& os) { write_results(results, os); });
    return static_cast<int>(kExitOk);
  });
}

namespace {

int run_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err,
              bench::BenchReport (*experiment)(const bench::BenchConfig&)) {
  return guarded(err, [&] {
    bench::validate(opts.config);
    err << "# rng=" << datagen::SplitMix64::kAlgorithmName
        << " seed=" << opts.config.seed << " statistic=median runs="
        << opts.config.runs << " boundaries="
        << datagen::to_string(opts.config.boundary_style) << '\n';
    const bench::BenchReport report = experiment(opts.config);
    emit(opts.out_path, out,
         [&](std::ostream& os) { bench::write_csv(report, os); });
    return static_cast<int>(kExitOk);
  });
}

}  // namespace

int cmd_bench1(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return run_bench(opts, out, err, &bench::run_experiment_1);
}

int cmd_bench2(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return run_bench(opts, out, err, &bench::run_experiment_2);
}

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    using namespace analysis;
    const OccupancyModel model = make_model(opts.m1, opts.m2);
    const SlotDistribution dist = slot_probabilities(model);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("m1", std::to_string(model.m1));
    kv.emplace_back("m2", std::to_string(model.m2));
    if (model.m1 + model.m2 <= 4096) {
      kv.emplace_back("C", count_compositions(model).str());
    } else {
      kv.emplace_back("log10_C", format_real(log10_compositions(model)));
    }
    const std::size_t shown =
        std::min<std::size_t>(dist.probs.size() - 1, 10);
    for (std::size_t j = 0; j <= shown; ++j) {
      kv.emplace_back("P_" + std::to_string(j), format_real(dist.probs[j]));
    }
    kv.emplace_back("P", format_real(dist.p_tail));
    kv.emplace_back("mu_all", format_real(dist.mu_all));
    if (dist.mu_gt2) {
      kv.emplace_back("mu_gt2", format_real(*dist.mu_gt2));
      const SpeedupEstimate est = theoretical_speedup(model, opts.n);
      kv.emplace_back("n", std::to_string(opts.n));
      kv.emplace_back("t_bs", format_real(est.t_bs));
      kv.emplace_back("t_p", format_real(est.t_p));
      kv.emplace_back("speedup", format_real(est.ratio));
    } else {
      kv.emplace_back("mu_gt2", "undefined");
    }

    if (opts.csv) {
      out << "key,value\n";
      for (const auto& [k, v] : kv) out << k << ',' << v << '\n';
    } else {
      out << "# model: all weak compositions of m1 into m2 cells equally "
             "likely\n";
      for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_selftest(std::ostream& out) {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };
  const auto guard = [&](const std::string& name, auto&& body) {
    try {
      check(name, body());
    } catch (const std::exception& e) {
      check(name + " (threw: " + e.what() + ")", false);
    }
  };

  const std::vector<double> example{2, 11, 19, 20, 21, 27, 29, 30};
  guard("worked example grid: origin 2, delta 4, 7 cells", [&] {
    const UniformGrid g = build_grid(validate_bins(example), 0);
    return g.origin == 2.0 && g.delta == 4.0 && g.cells == 7;
  });
  guard("worked example histogram H=[0,0,1,0,3,0,2]", [&] {
    const AcceleratedBinner acc(validate_bins(example));
    const std::vector<std::uint32_t> want{0, 0, 1, 0, 3, 0, 2};
    return std::ranges::equal(acc.hist(), want);
  });
  guard("worked example cumulative S=[1,1,1,2,2,5,5,7]", [&] {
    const AcceleratedBinner acc(validate_bins(example));
    const std::vector<std::uint32_t> want{1, 1, 1, 2, 2, 5, 5, 7};
    return std::ranges::equal(acc.cumhist(), want);
  });
  guard("worked example queries 25->5 13->2 10.5->1 19.5->3", [&] {
    const AcceleratedBinner acc(validate_bins(example));
    const std::vector<double> xs{25, 13, 10.5, 19.5};
    const std::vector<BinResult> want{{5}, {2}, {1}, {3}};
    return acc.bin_slice(xs) == want;
  });
  guard("engines agree on worked example sweep", [&] {
    const BinSet bins = validate_bins(example);
    const AcceleratedBinner acc(bins);
    for (double x = 0.0; x <= 32.0; x += 0.125) {
      const BinResult p = acc.bin_value(x);
      if (p != binary_search_bin(bins, x) || p != linear_search_bin(bins, x)) {
        return false;
      }
    }
    return true;
  });
  guard("C(3,3)=10 and C_j=4,3,2,1", [&] {
    const auto model = analysis::make_model(3, 3);
    return analysis::count_compositions(model) == 10 &&
           analysis::count_slot_value(model, 0) == 4 &&
           analysis::count_slot_value(model, 1) == 3 &&
           analysis::count_slot_value(model, 2) == 2 &&
           analysis::count_slot_value(model, 3) == 1;
  });
  guard("enumeration matches C and m2*C_j for m1,m2 <= 6", [&] {
    for (std::uint64_t m1 = 1; m1 <= 6; ++m1) {
      for (std::uint64_t m2 = 1; m2 <= 6; ++m2) {
        const auto model = analysis::make_model(m1, m2);
        std::vector<std::uint64_t> slots(m1 + 1, 0);
        std::uint64_t rows = 0;
        analysis::CompositionEnumerator e(model);
        while (e.next()) {
          ++rows;
          for (auto v : e.current()) ++slots[v];
        }
        if (analysis::count_compositions(model) != rows) return false;
        for (std::uint64_t j = 0; j <= m1; ++j) {
          if (analysis::count_slot_value(model, j) * m2 != slots[j]) {
            return false;
          }
        }
      }
    }
    return true;
  });
  guard("P(3,3) = 2/5, 3/10, 1/5, tail 1/10", [&] {
    using analysis::BigRational;
    const auto model = analysis::make_model(3, 3);
    return analysis::exact_slot_probability(model, 0) == BigRational(2, 5) &&
           analysis::exact_slot_probability(model, 1) == BigRational(3, 10) &&
           analysis::exact_slot_probability(model, 2) == BigRational(1, 5) &&
           analysis::exact_slot_probability(model, 3) == BigRational(1, 10);
  });

  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: " + std::to_string(failures) +
                              " check(s) failed\n");
  return failures == 0 ? kExitOk : kExitInternalError;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, std::optional<std::uint64_t> env_seed) {
  CLI::App app{"Non-uniform binning with a uniform shadow grid", "fastbin"};
  app.require_subcommand(1);

  BinOptions bin_opts;
  std::string method = "proposed";
  auto* bin = app.add_subcommand("bin", "Bin values against boundaries");
  bin->add_option("--boundaries", bin_opts.boundaries_path,
                  "Boundary file (increasing numbers)")
      ->required();
  bin->add_option("--values", bin_opts.values_path, "Values to bin")
      ->required();
  bin->add_option("--out", bin_opts.out_path, "Output file (default stdout)");
  bin->add_option("--extra-cells", bin_opts.extra_cells,
                  "Extra shadow grid cells k");
  bin->add_option("--method", method, "proposed, binary or linear")
      ->check(CLI::IsMember({"proposed", "binary", "linear"}));

  const std::uint64_t default_seed = env_seed.value_or(1);
  struct BenchFlags {
    std::string m;
    std::string k;
    std::vector<std::string> dists{"uniform"};
    std::string style = "sorted-uniform-draws";
    std::uint64_t seed = 1;
    BenchOptions opts;
  };
  BenchFlags b1, b2;
  b1.m = "4,8,16,32,64,128,256,512";
  b2.m = "10,25,50";
  const auto add_bench_flags = [&](CLI::App* sub, BenchFlags& f, bool with_k) {
    f.seed = default_seed;
    sub->add_option("--m", f.m, "Bin counts, e.g. 4,64,512 or 4..8");
    if (with_k) sub->add_option("--k", f.k, "Extra cells, e.g. 0..11");
    sub->add_option("--n", f.opts.config.n, "Values per run");
    sub->add_option("--runs", f.opts.config.runs, "Timed runs (>= 3)");
    sub->add_option("--dist", f.dists, "Value distributions")
        ->delimiter(',');
    sub->add_option("--boundary-style", f.style, "Boundary generator");
    sub->add_option("--seed", f.seed, "Seed (default FASTBIN_SEED or 1)");
    sub->add_option("--out", f.opts.out_path, "CSV file (default stdout)");
    sub->add_flag("--linear", f.opts.config.include_linear,
                  "Also time linear search");
  };
  auto* bench1 = app.add_subcommand("bench1", "Speedup over binary search vs m");
  add_bench_flags(bench1, b1, false);
  auto* bench2 = app.add_subcommand("bench2", "Oversampled grid sweep over k");
  add_bench_flags(bench2, b2, true);

  AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Occupancy model summary");
  analyze->add_option("--m1", analyze_opts.m1, "Boundaries distributed")
      ->required();
  analyze->add_option("--m2", analyze_opts.m2, "Grid cells")->required();
  analyze->add_option("--n", analyze_opts.n, "Items for cost model");
  analyze->add_flag("--csv", analyze_opts.csv, "key,value output");

  auto* selftest = app.add_subcommand("selftest", "Built-in checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUserError;
  }

  if (*bin) {
    bin_opts.method = method == "binary"   ? bench::Method::Binary
                      : method == "linear" ? bench::Method::Linear
                                           : bench::Method::Proposed;
    return cmd_bin(bin_opts, out, err);
  }
  if (*bench1 || *bench2) {
    BenchFlags& f = *bench1 ? b1 : b2;
    auto& config = f.opts.config;
    const auto ms = parse_index_list(f.m);
    if (!ms) {
      err << "error: invalid --m list '" << f.m << "'\n";
      return kExitUserError;
    }
    config.m_values = *ms;
    if (!f.k.empty()) {
      const auto ks = parse_index_list(f.k);
      if (!ks) {
        err << "error: invalid --k list '" << f.k << "'\n";
        return kExitUserError;
      }
      config.k_values = *ks;
    }
    config.distributions.clear();
    for (const auto& d : f.dists) {
      const auto dist = datagen::parse_distribution(d);
      if (!dist) {
        err << "error: unknown distribution '" << d << "'\n";
        return kExitUserError;
      }
      config.distributions.push_back(*dist);
    }
    const auto style = datagen::parse_boundary_style(f.style);
    if (!style) {
      err << "error: unknown boundary style '" << f.style << "'\n";
      return kExitUserError;
    }
    config.boundary_style = *style;
    config.seed = f.seed;
    return *bench1 ? cmd_bench1(f.opts, out, err) : cmd_bench2(f.opts, out, err);
  }
  if (*analyze) return cmd_analyze(analyze_opts, out, err);
  if (*selftest) return cmd_selftest(out);
  return kExitUserError;
}

}  // namespace fastbin::cli

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastbin/bench.hpp"

namespace fastbin::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUserError = 1,
  kExitInternalError = 2,  // oracle mismatch; always a bug
};

struct BinOptions {
  std::string boundaries_path;
  std::string values_path;
  std::string out_path;  // empty writes to the output stream
  std::size_t extra_cells = 0;
  bench::Method method = bench::Method::Proposed;
};

struct BenchOptions {
  bench::BenchConfig config;
  std::string out_path;
};

struct AnalyzeOptions {
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  std::uint64_t n = 1;
  bool csv = false;
};

int cmd_bin(const BinOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench1(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench2(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_selftest(std::ostream& out);

// "4,8,16" or "0..11" (inclusive); nullopt on malformed input.
std::optional<std::vector<std::size_t>> parse_index_list(
    const std::string& text);

// Full command line including the program name. `env_seed` stands in for
// FASTBIN_SEED when no --seed is given.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, std::optional<std::uint64_t> env_seed = {});

}  // namespace fastbin::cli

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastbin/bin_set.hpp"

namespace fastbin {

// Malformed numeric text; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Whitespace/newline separated decimal numbers; lines whose first
// non-blank character is '#' are comments. "nan"/"inf" tokens parse, so
// finiteness is left to the consumer.
std::vector<double> parse_numbers(std::istream& in);
std::vector<double> read_numbers(const std::filesystem::path& path);

// One bin index per line.
void write_results(std::span<const BinResult> results, std::ostream& out);

}  // namespace fastbin

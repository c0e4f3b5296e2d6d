#include "fastbin/text_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace fastbin {

std::vector<double> parse_numbers(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
    const auto first = rest.find_first_not_of(" \t\f\v");
    if (first == std::string_view::npos || rest[first] == '#') continue;
    while (true) {
      const auto begin = rest.find_first_not_of(" \t\f\v");
      if (begin == std::string_view::npos) break;
      rest.remove_prefix(begin);
      const auto end = std::min(rest.find_first_of(" \t\f\v"), rest.size());
      const std::string_view token = rest.substr(0, end);
      std::string_view digits = token;
      // from_chars rejects a leading '+'.
      if (digits.size() > 1 && digits.front() == '+') digits.remove_prefix(1);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": invalid number '" + std::string(token) + "'",
                         line_no);
      }
      values.push_back(value);
      rest.remove_prefix(end);
    }
  }
  return values;
}

std::vector<double> read_numbers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  return parse_numbers(in);
}

void write_results(std::span<const BinResult> results, std::ostream& out) {
  std::string buffer;
  buffer.reserve(results.size() * 4);
  char digits[16];
  for (const BinResult r : results) {
    const auto [end, ec] = std::to_chars(digits, digits + sizeof digits, r.index);
    buffer.append(digits, end);
    buffer.push_back('\n');
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

}  // namespace fastbin

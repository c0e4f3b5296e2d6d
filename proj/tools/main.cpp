#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fastbin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::uint64_t> env_seed;
  if (const char* s = std::getenv("FASTBIN_SEED"); s && *s) {
    try {
      env_seed = std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "error: FASTBIN_SEED is not an unsigned integer: " << s
                << '\n';
      return fastbin::cli::kExitUserError;
    }
  }
  return fastbin::cli::run(args, std::cout, std::cerr, env_seed);
}

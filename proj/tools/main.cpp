#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return minoramp::cli::run_cli(args, std::cout, std::cerr);
}

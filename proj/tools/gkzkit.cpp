#include "gkz/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = gkz::cli::run(args, std::cin);
  std::cout << r.output;
  if (!r.diagnostics.empty()) std::cerr << "gkzkit: " << r.diagnostics << "\n";
  return r.exit_code;
}

#include <iostream>
#include <string>
#include <vector>

#include "splinerom/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return splinerom::cli::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "kloost/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kloost::cli::run(args, std::cout, std::cerr);
}

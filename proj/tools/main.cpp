#include <iostream>
#include <string>
#include <vector>

#include "spinsurf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinsurf::run_cli(args, std::cout, std::cerr);
}

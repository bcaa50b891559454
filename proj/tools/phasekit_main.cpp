#include <iostream>
#include <string>
#include <vector>

#include "phasekit/run.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return phasekit::run_cli(args, std::cout, std::cerr);
}

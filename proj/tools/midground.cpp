#include <iostream>
#include <string>
#include <vector>

#include "midground/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return midground::cli::run(args, std::cout, std::cerr);
}

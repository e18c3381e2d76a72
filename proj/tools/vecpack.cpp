#include <iostream>
#include <string>
#include <vector>

#include "vecpack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return vecpack::cli_main(args, std::cout, std::cerr);
}

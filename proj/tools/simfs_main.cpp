#include <iostream>
#include <string>
#include <vector>

#include "simfs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return simfs::run_cli(args, std::cout, std::cerr);
}

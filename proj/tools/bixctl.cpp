#include <iostream>
#include <string>
#include <vector>

#include "bix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bix::cli_dispatch(args, std::cout, std::cerr);
}

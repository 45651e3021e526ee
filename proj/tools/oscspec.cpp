#include <iostream>
#include <string>
#include <vector>

#include "oscspec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return oscspec::cli::run(args, std::cout, std::cerr);
}

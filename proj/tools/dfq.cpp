#include <iostream>
#include <string>
#include <vector>

#include "dfq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dfq::cli::run(args, std::cin, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "lncv/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return lncv::cli::run(args, std::cin, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "kpl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kpl::cli::run(args, std::cout, std::cerr);
}

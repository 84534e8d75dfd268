#include <iostream>
#include <string>
#include <vector>

#include "locpl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return locpl::run_cli(args, std::cout, std::cerr);
}

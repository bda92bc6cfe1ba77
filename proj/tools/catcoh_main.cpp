#include <iostream>
#include <string>
#include <vector>

#include "catcoh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catcoh::run_cli(args, std::cout, std::cerr);
}

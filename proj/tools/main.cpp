#include <iostream>
#include <string>
#include <vector>

#include "zsig/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zsig::run_command(args, std::cout, std::cerr);
}

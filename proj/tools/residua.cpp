#include <iostream>

#include "residua/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return residua::run(args, std::cout, std::cerr);
}

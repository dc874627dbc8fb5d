#include <iostream>
#include <string>
#include <vector>

#include "conify/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return conify::run(args, std::cout, std::cerr);
}

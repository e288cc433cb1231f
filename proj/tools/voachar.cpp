#include <iostream>

#include "voachar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return voachar::run(args, std::cout, std::cerr);
}

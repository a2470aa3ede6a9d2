#include <iostream>
#include <string>
#include <vector>

#include "gpal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gpal::run(args, std::cout, std::cerr);
}

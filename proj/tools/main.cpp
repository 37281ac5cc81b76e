#include <iostream>
#include <string>
#include <vector>

#include "shapley_loc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return shapley_loc::cli::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "billiards/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return billiards::cli::run(args, std::cout, std::cerr);
}

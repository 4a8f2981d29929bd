#include <iostream>

#include "hdual/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hdual::cli::run(std::move(args), std::cout, std::cerr);
}

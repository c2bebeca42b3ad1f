#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return l0pen::cli::run_cli(std::move(args), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "topoemo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return topoemo::cli::run(std::move(args), std::cout, std::cerr);
}

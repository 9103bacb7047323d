#include <iostream>

#include "ncgame/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ncgame::cli::run(args, std::cout, std::cerr);
}

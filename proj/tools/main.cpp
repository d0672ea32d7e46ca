#include <iostream>

#include "latdisc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return latdisc::cli::run(args, std::cout, std::cerr);
}

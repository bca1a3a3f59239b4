#include <iostream>
#include <string>
#include <vector>

#include "anth/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return anth::cli::run(args, std::cout, std::cerr);
}

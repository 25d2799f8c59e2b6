#include <vector>

#include "radial/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return radial::cli::run(args);
}

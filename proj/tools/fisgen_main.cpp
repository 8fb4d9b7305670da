#include <string>
#include <vector>

#include "fisgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fisgen::cli_main(args);
}

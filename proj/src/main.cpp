#include <vector>

#include "svp/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return svp::cli_main(args);
}

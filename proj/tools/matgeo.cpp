#include <string>
#include <vector>

#include "matgeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return matgeo::run_command(args);
}

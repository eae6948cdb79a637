#include <vector>
#include <string>

#include "bergproj/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bergproj::cli::run(args);
}

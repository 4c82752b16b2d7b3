#include "gom/cli.hpp"

int main(int argc, char** argv) {
  return gom::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}

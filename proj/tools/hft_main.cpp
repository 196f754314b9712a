#include "hft/cli/commands.hpp"

int main(int argc, char** argv) {
  return hft::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}

#include <iostream>
#include <string>
#include <vector>

#include "heatalg/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return heatalg::run_cli(std::move(args), std::cout, std::cerr);
}

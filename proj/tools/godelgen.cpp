#include <iostream>
#include <string>
#include <vector>

#include "godelgen/cli.hpp"
#include "godelgen/stack.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  int status = godelgen::kExitParseError;
  try {
    godelgen::run_with_stack([&] { status = godelgen::run_cli(args, std::cout, std::cerr); });
  } catch (const std::exception& e) {
    std::cerr << "godelgen: " << e.what() << "\n";
    return godelgen::kExitRejected;
  }
  return status;
}

#include <iostream>

#include "acceptance.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toptree::cli::run(args, std::cout, std::cerr,
                           [](std::ostream& out) { return toptree::acceptance::run_all(out); });
}

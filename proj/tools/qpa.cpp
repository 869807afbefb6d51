#include <iostream>

#include "qpa/cli.hpp"

int main(int argc, char** argv) {
  return qpa::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

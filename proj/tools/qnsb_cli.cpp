#include <iostream>

#include "qnsb/cli_io.hpp"

int main(int argc, char** argv) {
  return qnsb::run_cli(argc, argv, std::cout, std::cerr);
}

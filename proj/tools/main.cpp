#include <iostream>

#include "jacobi/cli.hpp"

int main(int argc, char** argv) {
  return jacobi::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "leachsim/cli.h"

int main(int argc, char** argv) {
  return leachsim::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "resonance/cli.hpp"

int main(int argc, char** argv) {
  return resonance::cli::run(argc, argv, std::cout, std::cerr);
}

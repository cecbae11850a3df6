#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv)
{
  return pdsynth::cli::run_command(argc, argv, std::cin, std::cout, std::cerr);
}

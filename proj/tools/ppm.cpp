#include <iostream>

#include "ppm/cli/commands.hpp"

int main(int argc, char** argv) { return ppm::cli::run(argc, argv, std::cout, std::cerr); }

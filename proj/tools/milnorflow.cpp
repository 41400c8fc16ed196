#include <iostream>

#include "milnorflow/cli.hpp"

int main(int argc, char** argv) { return milnorflow::cli::run(argc, argv, std::cout, std::cerr); }

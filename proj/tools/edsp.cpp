#include <iostream>

#include "edsp/cli.hpp"

int main(int argc, char** argv) { return edsp::cli::run(argc, argv, std::cout, std::cerr); }

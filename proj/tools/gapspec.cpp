#include <iostream>

#include "gapspec/cli.hpp"

int main(int argc, char** argv) { return gapspec::cli::run(argc, argv, std::cout, std::cerr); }

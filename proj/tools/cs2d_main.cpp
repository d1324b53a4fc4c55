#include <iostream>

#include "cs2d/cli.hpp"

int main(int argc, char** argv) { return cs2d::cli::main_entry(argc, argv, std::cout, std::cerr); }

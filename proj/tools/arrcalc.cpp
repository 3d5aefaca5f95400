#include <iostream>

#include "arrcalc_cli.hpp"

int main(int argc, char** argv) { return arr::cli::run(argc, argv, std::cout, std::cerr); }

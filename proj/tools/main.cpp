#include <iostream>

#include "lpd/cli.hpp"

int main(int argc, char** argv) { return lpd::cli::run(argc, argv, std::cout, std::cerr); }

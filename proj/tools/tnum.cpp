#include "tnum/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tnum::cli::run_cli(argc, argv, std::cout, std::cerr); }

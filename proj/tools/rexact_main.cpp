#include "rexact/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return rexact::run_cli(argc, argv, std::cout, std::cerr); }

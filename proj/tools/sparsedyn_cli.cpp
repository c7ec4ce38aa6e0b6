#include <iostream>

#include "sparsedyn/harness/cli.hpp"

int main(int argc, char** argv) { return sparsedyn::harness::run_cli(argc, argv, std::cout, std::cerr); }

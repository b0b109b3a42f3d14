#include <iostream>

#include "cfvs/cli.hpp"

int main(int argc, char** argv) { return cfvs::run_cli(argc, argv, std::cout, std::cerr); }

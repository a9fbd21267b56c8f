#include <iostream>

#include "coxeterkit/cli.hpp"

int main(int argc, char** argv) { return coxeterkit::run_cli(argc, argv, std::cout, std::cerr); }

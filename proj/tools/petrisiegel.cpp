#include <iostream>

#include "petrisiegel/cli.hpp"

int main(int argc, char** argv) { return petrisiegel::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "pbias/cli.hpp"

int main(int argc, char** argv) { return pbias::run_cli(argc, argv, std::cout, std::cerr); }

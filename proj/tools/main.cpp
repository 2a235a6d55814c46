#include <iostream>

#include "rangectl/cli.hpp"

int main(int argc, char** argv) { return rangectl::run_cli(argc, argv, std::cout, std::cerr); }

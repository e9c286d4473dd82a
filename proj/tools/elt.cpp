#include <iostream>

#include "elt/cli.hpp"

int main(int argc, char** argv) { return elt::run_cli(argc, argv, std::cout, std::cerr); }

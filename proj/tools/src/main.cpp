#include <iostream>

#include "polydil/cli.hpp"

int main(int argc, char** argv) { return polydil::run_cli(argc, argv, std::cout, std::cerr); }

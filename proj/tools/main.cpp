#include <iostream>

#include "ramsey/cli.hpp"

int main(int argc, char** argv) { return ramsey::run_cli(argc, argv, std::cin, std::cout, std::cerr); }

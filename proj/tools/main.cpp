#include <iostream>

#include "ccsym/cli.hpp"

int main(int argc, char** argv) { return ccsym::cli_main(argc, argv, std::cout, std::cerr); }

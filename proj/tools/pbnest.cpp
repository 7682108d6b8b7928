#include <iostream>

#include "pbnest/cli.hpp"

int main(int argc, char** argv) { return pbnest::cli_main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "varbound/cli.hpp"

int main(int argc, char** argv) { return varbound::cli::main_entry(argc, argv, std::cout, std::cerr); }

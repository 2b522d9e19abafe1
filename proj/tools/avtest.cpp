#include <iostream>

#include "avtest/cli/commands.hpp"

int main(int argc, char** argv) { return avtest::cli::run_cli(argc, argv, std::cout, std::cerr); }

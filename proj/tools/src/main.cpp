#include <iostream>

#include "digh_cli/cli.hpp"

int main(int argc, char** argv) { return digh::cli::run(argc, argv, std::cout, std::cerr); }

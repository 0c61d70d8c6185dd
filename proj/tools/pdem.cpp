#include <iostream>

#include "pdem/cli.hpp"

int main(int argc, char** argv) { return pdem::cli::run(argc, argv, std::cout, std::cerr); }

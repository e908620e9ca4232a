#include <iostream>

#include "cuspdet/cli.hpp"

int main(int argc, char** argv) { return cuspdet::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "gcl/cli.hpp"

int main(int argc, char** argv) { return gcl::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "mpec/cli.hpp"

int main(int argc, char** argv) { return mpec::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "fqa/cli.hpp"

int main(int argc, char** argv) { return fqa::cli::run(argc, argv, std::cout, std::cerr); }

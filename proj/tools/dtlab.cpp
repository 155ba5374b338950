#include <iostream>

#include "dtlab/cli.hpp"

int main(int argc, char** argv) { return dtlab::cli::run(argc, argv, std::cout, std::cerr); }

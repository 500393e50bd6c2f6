#include <iostream>

#include "relik/cli.hpp"

int main(int argc, char** argv) { return relik::cli::run(argc, argv, std::cout, std::cerr); }

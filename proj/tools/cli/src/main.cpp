#include <iostream>

#include "arlog/cli.hpp"

int main(int argc, char** argv) { return arlog::cli::run(argc, argv, std::cout, std::cerr); }

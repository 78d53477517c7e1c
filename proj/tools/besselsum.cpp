#include <iostream>

#include "besselsum/cli.hpp"

int main(int argc, char** argv) { return besselsum::cli::run(argc, argv, std::cout, std::cerr); }

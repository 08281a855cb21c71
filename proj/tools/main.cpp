#include "isqeig/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return isq::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "mqm/cli.hpp"

int main(int argc, char** argv) { return mqm::cli::run(argc, argv, std::cout, std::cerr); }

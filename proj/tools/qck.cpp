#include <iostream>

#include "qck/cli.hpp"

int main(int argc, char** argv) { return qck::cli::run(argc, argv, std::cout, std::cerr); }

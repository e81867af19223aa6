#include <iostream>

#include "mdlq/cli.hpp"

int main(int argc, char** argv) { return mdlq::cli::run(argc, argv, std::cout, std::cerr); }

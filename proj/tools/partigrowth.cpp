#include <iostream>

#include "partigrowth/cli.hpp"

int main(int argc, char** argv) { return partigrowth::cli::run(argc, argv, std::cout, std::cerr); }

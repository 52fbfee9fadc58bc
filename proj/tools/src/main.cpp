#include <iostream>

#include "eaqcc_cli/cli.hpp"

int main(int argc, char** argv) { return eaqcc::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "qkr/cli.hpp"

int main(int argc, char** argv) { return qkr::cliMain(argc, argv, std::cout, std::cerr); }

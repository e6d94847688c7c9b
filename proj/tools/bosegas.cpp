#include <iostream>

#include "bosegas/cli.hpp"

int main(int argc, char** argv) { return bosegas::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "monolap/cli.hpp"

int main(int argc, char** argv) { return monolap::run_cli(argc, argv, std::cout, std::cerr); }

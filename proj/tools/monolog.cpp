#include <iostream>

#include "monolog/cli.hpp"

int main(int argc, char** argv) { return monolog::run_cli(argc, argv, std::cout, std::cerr); }

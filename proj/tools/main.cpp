#include <iostream>

#include "qmt/bench/cli.hpp"

int main(int argc, char** argv) { return qmt::bench::run_cli(argc, argv, std::cout, std::cerr); }

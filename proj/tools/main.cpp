#include <iostream>

#include "cvxdiff/io.hpp"

int main(int argc, char** argv) { return cvxdiff::io::run_cli(argc, argv, std::cout, std::cerr); }

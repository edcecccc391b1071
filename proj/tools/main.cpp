#include <iostream>

#include "wglab/cli.hpp"

int main(int argc, char** argv) { return wglab::cli_dispatch(argc, argv, std::cout, std::cerr); }

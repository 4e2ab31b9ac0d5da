#include "polibench/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return polibench::cli::run(argc, argv, std::cout, std::cerr);
}

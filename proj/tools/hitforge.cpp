#include <iostream>

#include "hitforge/cli.hpp"

int main(int argc, char** argv) {
    return hitforge::cli::run(argc, argv, std::cout, std::cerr);
}

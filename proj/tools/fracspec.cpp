#include <iostream>

#include "fracspec/cli.hpp"

int main(int argc, char** argv) {
    return fracspec::cli::run(argc, argv, std::cout, std::cerr);
}

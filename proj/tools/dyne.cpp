#include <iostream>

#include "dyne/cli.hpp"

int main(int argc, char** argv) {
    return dyne::cli::run(argc, argv, std::cout, std::cerr);
}

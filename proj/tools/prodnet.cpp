#include <iostream>

#include "prodnet/cli.hpp"

int main(int argc, char** argv) {
    return prodnet::cli::run(argc, argv, std::cout, std::cerr);
}

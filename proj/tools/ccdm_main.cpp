#include <iostream>

#include "ccdm/cli.hpp"

int main(int argc, char** argv) {
    return ccdm::cli::run(argc, argv, std::cout, std::cerr);
}

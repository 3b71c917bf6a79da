#include "ncqm/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return ncqm::cli::run(argc, argv, std::cout, std::cerr);
}

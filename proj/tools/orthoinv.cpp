#include <iostream>
#include <vector>

#include "orthoinv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return orthoinv::cli::run(std::move(args), std::cout, std::cerr);
}

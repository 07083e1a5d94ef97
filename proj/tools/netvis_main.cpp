#include <iostream>

#include "netvis/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return netvis::cli::run(args, std::cout, std::cerr);
}

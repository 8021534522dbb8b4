#include <iostream>
#include <string>
#include <vector>

#include "riccati_lie/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return riccati_lie::cli::run(args, std::cout, std::cerr);
}

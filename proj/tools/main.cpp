#include <iostream>
#include <string>
#include <vector>

#include "sgeom/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return sgeom::cli::run(args, std::cout, std::cerr);
}

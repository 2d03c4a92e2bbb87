#include <iostream>
#include <string>
#include <vector>

#include "bohmcl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bohmcl::cli::run(args, std::cout, std::cerr);
}

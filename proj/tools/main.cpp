#include <iostream>
#include <string>
#include <vector>

#include "catseries/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cts::cli::run(args, std::cout, std::cerr);
}

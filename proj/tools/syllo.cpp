#include <iostream>
#include <string>
#include <vector>

#include "syllogistic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return syl::cli::run(args, std::cout, std::cerr);
}

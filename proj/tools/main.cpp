#include <iostream>
#include <string>
#include <vector>

#include "dronesec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dronesec::cli::run(args, std::cout, std::cerr);
}

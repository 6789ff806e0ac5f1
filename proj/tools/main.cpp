// main.cpp — thin executable wrapper around the command-line interface
#include <iostream>
#include <string>
#include <vector>

#include "corrproj/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return corrproj::cli::run(args, std::cout, std::cerr);
}

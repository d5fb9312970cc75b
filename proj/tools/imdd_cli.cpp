#include <iostream>
#include <string>
#include <vector>

#include "imdd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return imdd::run_cli(args, std::cout, std::cerr);
}

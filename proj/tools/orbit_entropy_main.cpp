#include <iostream>
#include <string>
#include <vector>

#include "orbitent/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return orbitent::cli::run(std::move(args), std::cout, std::cerr);
}

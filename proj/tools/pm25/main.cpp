#include <iostream>

#include "pm25cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pm25::cli::run(args, std::cout, std::cerr);
}

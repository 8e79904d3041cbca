#include <iostream>
#include <string>
#include <vector>

#include "millsbounds/cli.hpp"
#include "millsbounds/grid_kernels.hpp"

int main(int argc, char** argv) {
    mills::kernels::configure_threads_from_env();
    const std::vector<std::string> args(argv + 1, argv + argc);
    return mills::cli::run(args, std::cout, std::cerr);
}

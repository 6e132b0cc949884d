// stokes_qsl_main.cpp — thin executable wrapper; all behavior lives in
// sqsl::cli::run_main so the exit-code contract is unit testable.

#include <iostream>
#include <string>
#include <vector>

#include "stokes_qsl/commands.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return sqsl::cli::run_main(args, std::cout, std::cerr);
}

#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "asbec/cli.hpp"

namespace {

void on_sigint(int) { asbec::request_interrupt(); }

}  // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_sigint);
    std::vector<std::string> args(argv + 1, argv + argc);
    return asbec::cli_main(args, std::cout, std::cerr);
}

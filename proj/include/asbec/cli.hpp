#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asbec {

// Full command-line entry point (args exclude the program name). Streams
// are injectable so tests can capture output. Returns the exit code:
// 0 success, 1 runtime failure, 2 usage/config errors, 130 interrupted.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Signal-safe: makes a running `run` command stop scheduling repetitions
// and flush what it has.
void request_interrupt();

}  // namespace asbec

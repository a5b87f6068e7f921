#pragma once

// Command-line front end. cli_dispatch runs one invocation against explicit
// output streams so tests can capture everything the binary would print.

#include <iosfwd>
#include <string>
#include <vector>

namespace gdstbc {

// args excludes the program name. Returns the process exit status: 0 on
// success, 1 on operational errors (bad input files, invalid parameters),
// 2 when `verify` finds violations. Usage errors report through CLI11's
// standard handling.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdstbc

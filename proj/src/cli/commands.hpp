#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gonodyn::cli {

// Parses the argument list (program name excluded) and runs one subcommand,
// writing the table to --out or to `out` when no path is given. Returns the
// process exit code: 0 success, 2 usage/config error, 3 internal invariant
// violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gonodyn::cli

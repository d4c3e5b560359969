#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hoprisk::cli {

// Runs the command line `args` (args[0] is the program name). Diagnostics
// go to `err`; data goes to the files named by --out, except for
// order-check without --out, which prints its report to `out`.
// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hoprisk::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aliasfree::cli {

/// Runs the command line `args` (args[0] is the program name). Returns 0 on
/// success, 2 on usage errors, 1 on runtime errors; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aliasfree::cli

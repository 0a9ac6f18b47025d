#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gssl::cli {

/// Runs one command line (args[0] is the program name). Returns the process
/// exit status: 0 on success, 2 for bad input or configuration, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gssl::cli

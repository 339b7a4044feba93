#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarse::cli {

/// Runs one subcommand (arguments without the program name) and returns the
/// process exit status: 0 ok, 1 I/O, 2 malformed input, 3 window/border
/// problems, 4 failed certification.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse::cli

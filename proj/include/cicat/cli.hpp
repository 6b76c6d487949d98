#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cicat::cli {

// Runs one command line (without the program name). Exit codes: 0 for a
// true or successful result, 1 for a false one, 2 for usage and input
// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cicat::cli

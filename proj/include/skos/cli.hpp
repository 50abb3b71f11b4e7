#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skos::cli {

// Runs one invocation (arguments without the program name). Exit codes:
// 0 success, 1 computation error, 2 usage error or invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skos::cli

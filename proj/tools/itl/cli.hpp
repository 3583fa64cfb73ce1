#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace itl {

/// Dispatches a full command line (without the program name).
/// Exit codes: 0 success/holds, 1 witness or violation found, 2 usage or
/// input error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace itl

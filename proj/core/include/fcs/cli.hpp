#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcs {

/// Runs the `fcs` command line. Exit codes: 0 success, 1 usage error,
/// 2 invalid input, 3 numerical failure, 4 certificate FAILED.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fcs

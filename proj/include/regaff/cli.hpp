#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regaff {

/// Runs one CLI invocation (`args` excludes the program name) and returns
/// the process exit code: 0 success/verified, 1 property violation,
/// 2 usage error, 3 node budget exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regaff

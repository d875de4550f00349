#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riskspec {

/// Runs the command-line front end on the given argument list (without the
/// program name). Writes results to `out`, diagnostics to `err`.
/// Exit codes: 0 success, 2 numeric tolerance failure, 3 input/parse error,
/// 4 domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace riskspec

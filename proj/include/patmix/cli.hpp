#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patmix {

/// Runs one CLI invocation. Data goes to out, diagnostics to err.
/// Exit codes: 0 success, 2 domain or parse error, 3 capacity error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patmix

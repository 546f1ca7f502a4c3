#pragma once

// In-process entry point of the levysim command-line tool.
//
// Exit codes: 0 all checks pass, 1 statistical failure, 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace levysim::cli {

/// args excludes the program name. Payloads go to `out` unless --out names a
/// file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levysim::cli

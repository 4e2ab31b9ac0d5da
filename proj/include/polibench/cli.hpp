#pragma once

#include <iosfwd>

namespace polibench::cli {

/// Runs `polibench <command> ...`. Returns the process exit code: 0 on
/// success, 1 for usage or configuration errors, 2 for data errors. Errors
/// are written to `err` as a single line "error: <Kind>: <message>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polibench::cli

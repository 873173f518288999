#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irc::cli {

/// Runs the `irc` command line. `args` excludes the program name. Results go
/// to `out` (or the --out file), diagnostics to `err`. Returns the process
/// exit status: 0 on success, 1 on a runtime error, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irc::cli

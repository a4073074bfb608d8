#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csp {

enum ExitCode : int {
    ExitOk = 0,
    ExitVerifyFailed = 1,
    ExitUsage = 2,
};

/// Runs one command. args excludes the program name. Results go to out,
/// diagnostics to err; `verify --hit-file -` reads from in.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace csp

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hodge {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. The report goes to
/// `out`; diagnostics and the run manifest (one JSON line) go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace hodge

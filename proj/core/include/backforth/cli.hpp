#ifndef BACKFORTH_CLI_HPP
#define BACKFORTH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bf::cli {

// Exit codes: 0 = the queried property holds, 1 = it fails (a counterexample
// is part of the report), 2 = input or cap error.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitError = 2;

// Runs one subcommand.  `args` excludes the program name.  Reports go to
// `out` as JSON; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bf::cli

#endif

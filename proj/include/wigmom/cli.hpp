#ifndef WIGMOM_CLI_HPP
#define WIGMOM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wigmom::cli {

// Runs the command-line front end. Exit codes: 0 success, 1 malformed input
// or usage error, 2 uncertainty-check failure (check subcommand only).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wigmom::cli

#endif

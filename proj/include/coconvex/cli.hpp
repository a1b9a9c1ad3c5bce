#ifndef COCONVEX_CLI_HPP
#define COCONVEX_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace coconvex {

// Entry point shared by the binary and the tests. Subcommands:
// gen | sum | measure | solve | verify | plot. Returns the process exit
// status; diagnostics go to err. The environment variable COCONVEX_SEED,
// when set, overrides any seed given on the command line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coconvex

#endif

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace btiepi {

/// Command-line front end. `args` excludes the program name. JSON goes to `out`;
/// diagnostics to stderr. Exit status: 0 ok, 1 when a violation or counterexample
/// was found, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace btiepi

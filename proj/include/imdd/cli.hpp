#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imdd {

/// Command-line front end. args[0] is the program name. Returns the process
/// exit status: 0 on success, 1 on a module error, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imdd

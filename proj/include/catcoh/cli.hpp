#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catcoh {

// Command-line front end. `args` excludes the program name. Exit codes:
// 0 success, 1 mathematical negative (a check that ran and answered no),
// 2 input error (unreadable or ill-formed file, bad flags, resource caps).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catcoh

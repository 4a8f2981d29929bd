#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdual::cli {

/// Exit codes: 0 success, 1 negative verdict (reflexive not-equal,
/// Lagrangian check failed), 2 usage, parse or computation errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hdual::cli

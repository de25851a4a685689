#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pnelect::cli {

// Runs the command line tool against explicit streams, so tests can drive it
// in-process. Returns the process exit code: 0 on success (ties included),
// 2 on usage or input errors, 3 when the instance exceeds the enumeration
// bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pnelect::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace moebius::cli {

inline constexpr int kFormatVersion = 1;

/// args excludes the program name. Returns the process exit code:
/// 0 ok, 2 parse, 3 precondition, 4 resource guard, 5 invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace moebius::cli

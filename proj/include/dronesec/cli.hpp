#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dronesec::cli {

/// Entry point shared by the binary and the tests. args excludes argv[0].
/// Exit codes: 0 success (for `audit`: compliant), 1 audit non-compliance,
/// 2 configuration or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dronesec::cli

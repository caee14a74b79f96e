#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zstab::cli {

/// Dispatches a full command line (without the program name).
/// Exit codes: 0 success, 1 domain error (reported as JSON on stdout),
/// 2 usage error (reported on stderr).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zstab::cli

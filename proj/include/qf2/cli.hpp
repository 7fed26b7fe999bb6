#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qf2::cli {

/// Exit codes: 0 success or verified, 1 undecided or search exhausted, 2 usage or
/// parse error, 3 refutation candidate (a failed check with its instance dumped).
enum ExitCode { kOk = 0, kUndecided = 1, kUsage = 2, kRefuted = 3 };

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qf2::cli

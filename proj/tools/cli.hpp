#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfla::cli {

enum ExitCode : int { kOk = 0, kNo = 1, kInputError = 2 };

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfla::cli

#pragma once

#include <string>
#include <vector>

namespace ptmatch {

/// Entry point of the command-line tool; args exclude the program name.
/// Exit codes: 0 success, 2 input parse error, 3 ill-formed pattern,
/// 4 bad argument, 5 oracle mismatch.
int run_cli(const std::vector<std::string>& args);

} // namespace ptmatch

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace groupcausal::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs one command; `args` excludes the program name. Exit codes: 0 success, 1 the checked property fails,
/// 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace groupcausal::cli

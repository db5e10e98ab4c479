#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace occkit::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_check_failed = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace occkit::cli

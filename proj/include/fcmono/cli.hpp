#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace fcmono {

enum ExitCode { exit_ok = 0, exit_input = 1, exit_undecided = 2, exit_mismatch = 3 };

// Default cap, overridden by MONODROMY_CAP when set to a positive integer.
std::size_t default_cap_from_env();

// args excludes the program name. Reports go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcmono

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incr::cli {

/// Exit codes: 0 success, 1 a validated check failed (inequality violated,
/// refutation produced, chain hit its step floor), 2 usage or precondition
/// errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line given as argv-style arguments (without the program
/// name). All output goes to `out`, diagnostics to `err`; with --output the
/// primary artifact goes to that file instead. Pure function of its inputs:
/// reruns produce byte-identical output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace incr::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matchkit::cli {

enum ExitCode { ok = 0, usage = 1, parse = 2, inapplicable = 3, timeout = 4 };

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV of per-x means for the student-project experiment family.
std::string bench_csv(const std::vector<int>& xs, const std::vector<std::string>& algorithms, int trials,
                      unsigned long long seed);

}  // namespace matchkit::cli

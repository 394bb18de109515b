#pragma once

#include <string>
#include <vector>

namespace convlab {

// Batch front end: parses one subcommand (golden, trapezoid, euler, secant,
// jelly, jelly-sweep, report), runs the matching study, writes its files
// plus a manifest, and prints a one-line summary to standard output.
// Returns the process exit code: 0 success, 1 usage error, 2 numeric
// failure, 3 I/O failure.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace convlab

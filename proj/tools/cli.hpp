#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lttorus::cli {

inline constexpr const char* kVersion = "lttorus 1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Results go to `out` unless --out names a
// file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Appends flags read from a flat key=value file for every key not already
// given on the command line. A "command" key supplies the subcommand.
std::vector<std::string> merge_config(const std::vector<std::string>& args);

}  // namespace lttorus::cli

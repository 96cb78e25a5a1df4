#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace testrl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). `in`/`out` stand in for
// stdin/stdout when the input or --out is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Flat `key = value` config file: one pair per line, `#` comments, keys may
// use dashes or underscores. Throws std::runtime_error on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

}  // namespace testrl::cli

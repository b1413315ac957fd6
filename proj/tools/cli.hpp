#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace richlab::cli {

// Exit codes: 0 success, 1 usage or domain error, 2 verification counterexample.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_counterexample = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace richlab::cli

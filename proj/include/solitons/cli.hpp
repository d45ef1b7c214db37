#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solitons {

// Exit statuses of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

// args excludes the program name: {"verify", "--gammas", "1,2", ...}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solitons

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace lecf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailed = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitResource = 3;

// Runs one command. `args` excludes the program name. Results go to `out`;
// the config echo and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
// As above, with `-` poset documents read from `in` instead of stdin.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace lecf::cli

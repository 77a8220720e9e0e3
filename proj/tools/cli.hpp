#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pte::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. JSON mode writes exactly one object to out;
// diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pte::cli

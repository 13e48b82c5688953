#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dfq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the `dfq` tool. `args` excludes the program name. Query
// text is read from `in` when `query` is given no -e.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dfq::cli

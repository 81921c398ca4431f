#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace charp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). JSON goes to `out`
// unless --pretty is given; diagnostics go to `err`. Exit codes: 0 success,
// 1 mathematical failure (PrecisionExhausted, NotSolid, StreamsAgree, ...),
// 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace charp::cli

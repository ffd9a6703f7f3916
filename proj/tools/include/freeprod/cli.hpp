#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// The freeprod command line, callable in-process. Exit codes:
//   0  success
//   1  a mathematical hypothesis does not hold for the input (the message
//      quotes it), or N is too small for the requested model
//   2  I/O, JSON, word syntax, or command-line errors

namespace freeprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesis = 1;
inline constexpr int kExitInput = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freeprod::cli

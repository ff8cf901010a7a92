#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bpg::cli {

// Exit codes: 0 success (certificate found, Refuted), 1 usage or input error,
// 2 negative answer (NotFound, Inconclusive).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpg::cli

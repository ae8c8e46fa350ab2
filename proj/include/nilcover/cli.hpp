#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilcover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nilcover::cli

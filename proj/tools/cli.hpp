// cli.hpp
// Subcommand dispatch for the qcf binary.

#pragma once

namespace qcf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;        // bad flags, bad config, domain errors
inline constexpr int kExitUnreachable = 3;  // abort target or fair point unreachable
inline constexpr int kExitCheckFailed = 4;  // verification or reproduction checks failed

int run(int argc, const char* const* argv);

}  // namespace qcf::cli

#pragma once

// The markovlab command-line front end.

#include <iosfwd>
#include <string>

namespace markov {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitCapacity = 3,
};

/// Parses argv, runs the chosen subcommand, returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace markov

#pragma once

#include <iosfwd>

#include "dp7/io.hpp"

namespace dp7 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAccuracy = 3;

// Executes one command described by the config. Writes the artifact to
// config.output_path when set, prints a short summary to out and diagnostics
// to err. Exit codes: 0 success, 1 checked invariant violated, 2 usage
// error, 3 numerical accuracy failure (failing ladder embedded in the
// artifact and diagnostics).
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_command(config, out, err);
}

}  // namespace dp7

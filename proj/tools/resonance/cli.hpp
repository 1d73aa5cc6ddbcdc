#pragma once

#include <iosfwd>

namespace resonance::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kNumericalFailure = 2,
  kIoError = 3,
};

/// Entry point of the `resonance` tool:
///
///   resonance [--config FILE] [--output-dir DIR] <convert|synth|fit|evolve|survival> [flags]
///
/// Config values are applied first, command-line flags override them.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resonance::cli

#pragma once

#include <iosfwd>

namespace turfbbn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

/// Entry point behind the `turfbbn` binary:
///
///   turfbbn learn --ma FILE --sizes FILE [--constraints FILE] --out FILE [--dot FILE] [--seed N]
///   turfbbn scenarios NETWORK SCENARIOS [--out FILE] [--tsv FILE] [--seed N] [--samples N] [--reverse]
///   turfbbn serve NETWORK [--scenarios FILE] [--host H] [--port N] [--seed N] [--samples N]
///   turfbbn export-dot NETWORK [--out FILE]
///   turfbbn synth-data --ma FILE --sizes FILE [--seed N]
///   turfbbn constraints [--out FILE]
///   turfbbn presets [--out FILE]
///   turfbbn reference [--out FILE] [--rows N] [--seed N]
///
/// Exit status: 0 success, 1 bad input (files, schema, model errors,
/// failed scenarios), 2 anything unexpected.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace turfbbn::cli

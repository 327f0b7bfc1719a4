#pragma once

#include <ostream>

#include "tbell/io/config.hpp"

namespace tbell::io {

/// Process exit codes of `run`.
enum class ExitCode : int {
  ok = 0,
  usage = 2,             // bad command line or config
  io_error = 3,
  regime_violation = 4,  // only with --strict
  validation_failed = 5,
};

/// Executes one configured experiment, writes the result file, its
/// `.meta.json` sidecar and (optionally) a `.plot.py` script. Human-readable
/// progress goes to `out`, warnings and errors to `err`.
ExitCode run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tbell::io

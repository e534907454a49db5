// runner.hpp - command implementations shared by the CLI and its tests

#pragma once

#include <iosfwd>
#include <string>

#include "omspec/app/config.hpp"

namespace omspec::app {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Evolve, Spectrum, Dressed, Ledger, Run };

/// Executes one command and writes its artifacts under config.out_dir.
/// Library errors propagate; the caller decides the exit code.
void execute(Command command, const RunConfig& config, std::ostream& log);

/// Wraps execute(): returns 0 on success, 1 for model/numeric errors (after
/// writing error.json and printing the same JSON to `err`), 2 for config errors.
int run(Command command, const RunConfig& config, std::ostream& log, std::ostream& err);

}  // namespace omspec::app

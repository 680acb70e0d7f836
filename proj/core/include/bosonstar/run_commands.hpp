#pragma once

#include "bosonstar/run_config.hpp"

namespace bosonstar {

// Execute a validated run. All payloads are produced in memory first; the
// manifest (config echo, versions, wall time, output checksums) is written
// to <out>/manifest.json before any data file appears, and every file goes
// through an atomic temp-and-rename. When the run's physics check fails the
// artifacts are still written and invariant_violation is thrown afterwards.
void run_command(const RunConfig& cfg);

} // namespace bosonstar

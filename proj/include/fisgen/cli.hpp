#pragma once

#include <string>
#include <vector>

namespace fisgen {

/// Entry point behind the `fisgen` binary, callable in-process for tests.
/// Subcommands: synth, fit, predict, sweep, experiment.
/// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
int cli_main(const std::vector<std::string>& args);

}  // namespace fisgen

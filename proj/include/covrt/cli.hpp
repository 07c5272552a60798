#pragma once

namespace covrt {

// Full command-line entry point (subcommands: train, predict, evaluate,
// prune, simulate, experiment, verify). Exit codes: 0 success / all checks
// pass, 1 usage error, 2 data error, 3 verification failure.
int cli_main(int argc, const char* const* argv);

}  // namespace covrt

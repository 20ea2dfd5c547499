#ifndef EDGESTAT_HARNESS_CLI_HPP
#define EDGESTAT_HARNESS_CLI_HPP

#include <ostream>

namespace edgestat {

/// Entry point of the edgestat tool. Subcommands: equilibrium, kernel, gap,
/// tw, edge-scan, deviations, linearize-check, sample, tail.
/// Returns 0 on success, 1 on invalid input, 2 on numerical failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace edgestat

#endif  // EDGESTAT_HARNESS_CLI_HPP

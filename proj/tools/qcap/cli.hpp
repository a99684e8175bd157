// Command-line front end: single bound evaluations, parameter sweeps with
// CSV/JSON output, the acceptance self-test, and the bound catalogue.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcap::cli {

// Runs the full CLI against the given argument list (excluding the program
// name) writing to the supplied streams; returns the process exit code:
//   0  success (solver status optimal, or closed-form value)
//   1  usage error: unknown bound/flag, malformed channel spec, bad range
//   2  solver failure on a compute invocation
//   3  sweep completed with at least one flagged row
//   4  self-test with at least one failing criterion
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// argv adapter for main(); forwards to the stream overload on stdout/stderr.
int run(int argc, const char* const* argv);

} // namespace qcap::cli

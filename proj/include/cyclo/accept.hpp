#pragma once

#include "cyclo/report.hpp"

namespace cyclo {

// The full verification battery: thirteen named checks in a fixed order,
// shared by the acceptance test binary and the verify-paper subcommand.
Report run_acceptance(const RunConfig& cfg);

// Base graphs of the three pendant families studied by the battery, in the
// text format understood by MarkedGraph::parse_text. i in {1, 2, 3}.
const char* pendant_family_text(int i);

}  // namespace cyclo

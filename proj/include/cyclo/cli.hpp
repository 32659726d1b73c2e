#pragma once

#include <string>
#include <vector>

namespace cyclo {

// Entry point behind main(); args exclude the program name. Returns the
// process exit code: 0 success, 1 failed checks, 2 usage or input errors.
// Every flag can also be supplied through a CYCLO_-prefixed env variable.
int cli_main(std::vector<std::string> args);

}  // namespace cyclo

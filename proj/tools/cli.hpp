#pragma once

#include <string>
#include <vector>

namespace rictube::cli {

/// Exit codes: 0 all checks pass, 1 checks ran and some failed (report still
/// written), 2 usage or configuration error, 3 numeric failure.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace rictube::cli

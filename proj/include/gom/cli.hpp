#pragma once

#include <string>
#include <vector>

namespace gom::cli {

// Entry point behind the `gom` binary. Exit codes: 0 success, 2 config
// error, 3 runtime error, 4 I/O error.
int run(const std::vector<std::string>& args);

}  // namespace gom::cli

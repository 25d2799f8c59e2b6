// Command-line driver.  Exit codes: 0 success, 2 validation error (missing
// file, malformed or unknown spec fields), 3 solver/math domain error;
// `gallery` exits 1 when any fixture fails.
#pragma once

#include <string>
#include <vector>

namespace radial::cli {

int run(const std::vector<std::string>& args);

}  // namespace radial::cli

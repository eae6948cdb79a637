#pragma once

#include <string>
#include <vector>

namespace bergproj::cli {

// Command-line front end; argv excludes the program name.
// Exit codes: 0 success, 1 check failure, 2 usage error.
int run(const std::vector<std::string>& argv);

} // namespace bergproj::cli

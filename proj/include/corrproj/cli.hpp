// cli.hpp — command-line entry point (validate / evolve / twoband / compare)
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corrproj::cli {

// runs the full command-line interface; returns the process exit code:
// 0 success, 1 quantitative failure (validation failed, tolerance exceeded,
// divergence), 2 usage or input errors
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace corrproj::cli

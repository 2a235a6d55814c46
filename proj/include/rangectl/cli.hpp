#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rangectl {

/// Exit codes: 0 success, 2 usage or input error, 3 solver budget exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The published control classifications (static metadata).
std::string classification_table();

}  // namespace rangectl

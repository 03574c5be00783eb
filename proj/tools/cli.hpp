#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpa::cli {

/// Runs one `lpa` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 when a search ends in Unknown, 2 on errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpa::cli

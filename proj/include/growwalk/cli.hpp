#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "growwalk/growth_model.hpp"

namespace growwalk {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitConfig = 2 };

/// `constant:c=K`, `linear:C=K`, `power:C=K,gamma=G[,exp=E]` or `table:PATH`.
/// Without `exp`, power uses the family's exponent convention for gamma.
Schedule parse_schedule_spec(std::string_view spec, Family family);

/// Full command line (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace growwalk

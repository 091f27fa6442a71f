#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xnr::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kUsage = 2,
  kBoundExceeded = 3,
};

/// Runs the `xnr` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xnr::cli

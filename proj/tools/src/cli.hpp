#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqloc::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kMathError = 3,
  kHeavyRefused = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteOptions {
  unsigned workers = 1;
  bool allow_heavy = false;
};

std::vector<std::string> suite_names();
/// Throws InvalidArgument for an unknown suite name.
std::vector<Check> run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace eqloc::cli

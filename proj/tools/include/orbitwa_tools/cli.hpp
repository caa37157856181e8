#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitwa::cli
{

enum ExitCode : int
{
  Positive = 0,     // equivalent / zero / command succeeded
  Negative = 1,     // not equivalent / not zero
  InputError = 2,
  ResourceCeiling = 3,
};

/// Runs one command line (without the program name). Reports go to `out` as
/// a single JSON line, diagnostics go to `err`.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace orbitwa::cli

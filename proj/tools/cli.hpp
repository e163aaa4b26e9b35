#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rigepi::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,   // I/O or unexpected runtime failure
  kUsage = 2,
  kDomain = 3,
  kCapacity = 4,
};

/// Runs one command line (program name excluded). Results go to files under
/// --out and, for `theory`, to `out`; failures print one line to `err`:
///   error: kind=<usage|domain|capacity|failure> message="..."
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rigepi::cli

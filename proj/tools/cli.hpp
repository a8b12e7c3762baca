#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtag::cli {

// Exit statuses; also listed in `qtag --help`.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kMalformedFile = 3,
  kVerificationFailed = 4,
  kInvalidParameters = 5,
  kSearchLimit = 6,
};

/// Runs one command line (args[0] is the program name). Results go to
/// `out` unless an --out file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtag::cli

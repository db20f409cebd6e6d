#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmoment::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kComputationError = 3,
  kInfeasibleWitness = 4,
  kPrecisionExhausted = 5,
};

struct RunConfig {
  std::string q;
  int digits = 50;
  long n_max = 10;
  long window = 40;
  std::string input;
  std::string zoo;
  std::vector<std::string> params;
  std::string format = "json";
  std::string out;
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --out file), diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmoment::cli

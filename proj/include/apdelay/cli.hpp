#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace apdelay {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,          // success, hypotheses hold, certificate issued
  kExitCheckFailed = 1, // check failed, resonance, refusal
  kExitUsage = 2,       // usage, parse or validation error
  kExitNumerical = 3,   // BoundaryRoot / NoConvergence after retries
};

struct CliRequest {
  std::string command;
  std::string input_path;
  std::optional<double> xi_max;
  std::optional<double> axis_tol;
  std::optional<double> T;
  std::optional<double> dt;
  std::optional<int> k;
  std::vector<std::string> tau;  // rational coordinates over the generators
  std::optional<std::string> out;
  std::string format = "json";

  // spectrum
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<double> grid_step;
  std::optional<double> eps;
  double threshold = 1e-3;
  std::vector<double> lambdas;
  std::optional<double> mean_T;
};

inline const std::vector<std::string>& cli_commands() {
  static const std::vector<std::string> kCommands = {"roots",   "sigma-i", "check",    "solve",
                                                     "decompose", "certify", "simulate", "spectrum"};
  return kCommands;
}

/// Runs one command, writing the JSON report to `out` and diagnostics to
/// `err`. Never throws for valid or invalid input; failures map to exit
/// codes.
int run(const CliRequest& request, std::ostream& out, std::ostream& err);

}  // namespace apdelay

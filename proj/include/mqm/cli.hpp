#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mqm/spectra.hpp"

namespace mqm::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kNonConvergence = 2 };

/// Everything a subcommand reads from the command line.
struct RunConfig {
  std::string scenario;
  double m = 1.0;
  std::optional<double> alpha;
  std::optional<double> eta;
  std::optional<double> mlambda;
  std::optional<double> rho0;
  std::string n_range;
  std::string l_range = "0";
  bool oracle = false;
  bool exact = false;
  int grid_points = 4000;
  std::optional<double> rho_max;
  std::string format = "json";
  std::string output;
  // wavefunction
  std::optional<double> frequency;
  int root = 0;
  double r_lo = 0.0;
  double r_hi = 6.0;
  int points = 601;
  // verify
  std::string inject_fault;
};

/// Parses "a..b" or a single integer into the inclusive list of values.
/// `flag` names the option in error messages.
std::vector<int> parse_range(const std::string& text, const std::string& flag);

/// Checks flag combinations for the scenario and builds it. Error messages
/// name the offending flag.
ConfinementSpec build_scenario(const RunConfig& config);

std::string cmd_spectrum(const RunConfig& config);
std::string cmd_frequency(const RunConfig& config);
std::string cmd_wavefunction(const RunConfig& config);
/// Returns the report text and sets `all_pass`.
std::string cmd_verify(const RunConfig& config, bool& all_pass);

/// Entry point; writes reports to `out` (or --output) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mqm::cli

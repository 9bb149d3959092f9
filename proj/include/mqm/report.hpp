#pragma once

// Machine-readable reports: JSON for spectra and verification runs, CSV for
// tables and wavefunction grids. Floats carry 12 significant digits.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mqm::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

/// Rounds to 12 significant digits (ties to even on exact binary ties).
double round_sig(double value, int digits = kSignificantDigits);

/// Text form with 12 significant digits, as used in CSV output.
std::string format_number(double value, int digits = kSignificantDigits);

/// JSON number rounded to 12 significant digits; null for NaN or infinity.
Json number(double value);
Json number(const std::optional<double>& value);

struct ResultRow {
  int n = 0;
  int l = 0;
  double frequency = 0.0;
  double energy = 0.0;
  std::optional<double> oracle_energy;
  std::optional<double> rel_dev;
  std::string provenance;
  Json extra = Json::object();  ///< scenario-specific fields, appended last
};

enum class Relation { kAtMost, kAtLeast, kWithin };

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  /// kWithin uses [tolerance, upper].
  Relation relation = Relation::kAtMost;
  double upper = 0.0;
};

/// Builds a check and evaluates pass from measured and the relation.
Check make_check(std::string name, double measured, double tolerance,
                 Relation relation = Relation::kAtMost, double upper = 0.0);

struct Report {
  Json config = Json::object();
  std::vector<ResultRow> results;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool all_pass() const;
};

Json to_json(const Report& report);
std::string to_json_text(const Report& report);
std::string results_csv(const Report& report);

/// Writes through a temporary file in the same directory, then renames.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace mqm::report

#include "mqm/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "mqm/error.hpp"

namespace mqm::report {

double round_sig(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  return std::strtod(format_number(value, digits).c_str(), nullptr);
}

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  // glibc rounds exact decimal ties to even under the default rounding mode.
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round_sig(value);
}

Json number(const std::optional<double>& value) {
  return value ? number(*value) : Json(nullptr);
}

Check make_check(std::string name, double measured, double tolerance, Relation relation,
                 double upper) {
  Check c{std::move(name), false, measured, tolerance, relation, upper};
  switch (relation) {
    case Relation::kAtMost:
      c.pass = measured <= tolerance;
      break;
    case Relation::kAtLeast:
      c.pass = measured >= tolerance;
      break;
    case Relation::kWithin:
      c.pass = measured >= tolerance && measured <= upper;
      break;
  }
  if (!std::isfinite(measured)) c.pass = false;
  return c;
}

bool Report::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

Json to_json(const Report& report) {
  Json root = Json::object();
  root["schema_version"] = kSchemaVersion;
  root["config"] = report.config;
  Json results = Json::array();
  for (const auto& row : report.results) {
    Json r = Json::object();
    r["n"] = row.n;
    r["l"] = row.l;
    r["frequency"] = number(row.frequency);
    r["energy"] = number(row.energy);
    r["oracle_energy"] = number(row.oracle_energy);
    r["rel_dev"] = number(row.rel_dev);
    r["provenance"] = row.provenance;
    for (const auto& [key, value] : row.extra.items()) r[key] = value;
    results.push_back(std::move(r));
  }
  root["results"] = std::move(results);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j = Json::object();
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["measured"] = number(c.measured);
    switch (c.relation) {
      case Relation::kAtMost:
        j["tolerance"] = number(c.tolerance);
        j["relation"] = "<=";
        break;
      case Relation::kAtLeast:
        j["tolerance"] = number(c.tolerance);
        j["relation"] = ">=";
        break;
      case Relation::kWithin:
        j["tolerance"] = Json::array({number(c.tolerance), number(c.upper)});
        j["relation"] = "in";
        break;
    }
    checks.push_back(std::move(j));
  }
  root["checks"] = std::move(checks);
  root["notes"] = report.notes;
  return root;
}

std::string to_json_text(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string results_csv(const Report& report) {
  std::ostringstream out;
  out << "n,l,frequency,energy,oracle_energy,rel_dev,provenance\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& row : report.results) {
    out << row.n << ',' << row.l << ',' << format_number(row.frequency) << ','
        << format_number(row.energy) << ',' << opt(row.oracle_energy) << ','
        << opt(row.rel_dev) << ',' << row.provenance << '\n';
  }
  return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot open output path " + tmp.string());
    file << content;
    file.flush();
    if (!file) throw ValidationError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("cannot move report into place at " + path.string() + ": " +
                          ec.message());
  }
}

}  // namespace mqm::report

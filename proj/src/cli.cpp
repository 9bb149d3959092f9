#include "mqm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mqm/error.hpp"
#include "mqm/oracle.hpp"
#include "mqm/report.hpp"
#include "mqm/verify.hpp"

namespace mqm::cli {
namespace {

using report::format_number;
using report::Json;

constexpr int kMaxRangeLength = 1000;
constexpr int kOracleLevels = 10;

void require_flag(const std::optional<double>& value, const char* flag, const std::string& scenario) {
  if (!value) throw ValidationError(std::string(flag) + " is required for scenario " + scenario);
}

void reject_flag(const std::optional<double>& value, const char* flag, const std::string& scenario) {
  if (value) throw ValidationError(std::string(flag) + " is not used by scenario " + scenario);
}

void require_positive_flag(double value, const char* flag) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(flag) + " must be positive (got " + format_number(value) +
                          ")");
  }
}

Json config_json(const RunConfig& c, const char* command) {
  Json j = Json::object();
  j["command"] = command;
  j["scenario"] = c.scenario;
  j["m"] = report::number(c.m);
  j["alpha"] = report::number(c.alpha);
  j["eta"] = report::number(c.eta);
  j["Mlambda"] = report::number(c.mlambda);
  j["rho0"] = report::number(c.rho0);
  j["n"] = c.n_range;
  j["l"] = c.l_range;
  return j;
}

std::string render(const report::Report& rep, const std::string& format) {
  return format == "csv" ? report::results_csv(rep) : report::to_json_text(rep);
}

/// Closest oracle level to `energy`; fills oracle fields of the row.
void attach_oracle(report::ResultRow& row, const oracle::RadialProblem& problem,
                   const RunConfig& config, double energy, std::optional<int> index = {}) {
  const double rho_max =
      problem.boundary == oracle::Boundary::kHardWall
          ? problem.rho0
          : config.rho_max.value_or(oracle::suggest_rho_max(problem, energy));
  const int count = index ? *index + 1 : kOracleLevels;
  const auto fd = oracle::fd_eigenvalues(problem, {rho_max, config.grid_points}, count);
  double best = fd.levels.front().energy;
  if (index) {
    best = fd.levels[*index].energy;
  } else {
    for (const auto& lv : fd.levels) {
      if (std::abs(lv.energy - energy) < std::abs(best - energy)) best = lv.energy;
    }
  }
  row.oracle_energy = best;
  row.rel_dev = std::abs(best - energy) / std::abs(energy);
  row.extra["oracle_rho_max"] = report::number(rho_max);
  if (fd.grid_too_coarse) row.extra["grid_too_coarse"] = true;
}

std::vector<double> frequencies_for(const ConfinementSpec& s, int n, int l, double m,
                                    report::Report& rep) {
  if (n == 1) return {ground_frequency(s, l, m)};
  const auto solve = frequency_solve_general(s, n, l, m);
  if (solve.frequencies.empty()) {
    rep.notes.push_back("no positive frequency with a_{n+1} = 0 for n=" + std::to_string(n) +
                        ", l=" + std::to_string(l) + " in [" + format_number(solve.window_lo) +
                        ", " + format_number(solve.window_hi) + "]");
  }
  return solve.frequencies;
}

}  // namespace

std::vector<int> parse_range(const std::string& text, const std::string& flag) {
  const auto bad = [&] {
    return ValidationError(flag + " must be an integer or an inclusive range a..b (got '" + text +
                           "')");
  };
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  const auto dots = text.find("..");
  const int lo = to_int(dots == std::string::npos ? text : text.substr(0, dots));
  const int hi = dots == std::string::npos ? lo : to_int(text.substr(dots + 2));
  if (hi < lo) throw ValidationError(flag + " range is empty (" + text + ")");
  if (hi - lo >= kMaxRangeLength) throw ValidationError(flag + " range is too long (" + text + ")");
  std::vector<int> values;
  for (int v = lo; v <= hi; ++v) values.push_back(v);
  return values;
}

ConfinementSpec build_scenario(const RunConfig& c) {
  require_positive_flag(c.m, "--m");
  const auto& name = c.scenario;
  if (name == "hardwall") {
    reject_flag(c.alpha, "--alpha", name);
    reject_flag(c.eta, "--eta", name);
    require_flag(c.rho0, "--rho0", name);
    require_positive_flag(*c.rho0, "--rho0");
    if (c.mlambda && !(*c.mlambda >= 0.0)) throw ValidationError("--Mlambda must be >= 0");
    return HardWall{*c.rho0};
  }
  if (name == "none") {
    reject_flag(c.alpha, "--alpha", name);
    reject_flag(c.eta, "--eta", name);
    reject_flag(c.rho0, "--rho0", name);
    require_flag(c.mlambda, "--Mlambda", name);
    require_positive_flag(*c.mlambda, "--Mlambda");
    return NoConfinement{};
  }
  reject_flag(c.rho0, "--rho0", name);
  if (c.mlambda) {
    throw ValidationError("--Mlambda is not an input for scenario " + name +
                          ": the frequency follows from the truncation condition");
  }
  if (name == "coulomb") {
    reject_flag(c.eta, "--eta", name);
    require_flag(c.alpha, "--alpha", name);
    require_positive_flag(*c.alpha, "--alpha");
    return Coulomb{*c.alpha};
  }
  if (name == "linear") {
    reject_flag(c.alpha, "--alpha", name);
    require_flag(c.eta, "--eta", name);
    require_positive_flag(*c.eta, "--eta");
    return Linear{*c.eta};
  }
  if (name == "mixed") {
    require_flag(c.alpha, "--alpha", name);
    require_flag(c.eta, "--eta", name);
    require_positive_flag(*c.alpha, "--alpha");
    require_positive_flag(*c.eta, "--eta");
    return CoulombLinear{*c.alpha, *c.eta};
  }
  throw ValidationError("--scenario must be one of none, hardwall, coulomb, linear, mixed (got '" +
                        name + "')");
}

std::string cmd_spectrum(const RunConfig& c) {
  const auto scenario = build_scenario(c);
  if (c.grid_points < 100) throw ValidationError("--grid must be at least 100");
  const bool constrained = is_constrained(scenario);
  const auto ns = parse_range(c.n_range.empty() ? (constrained ? "1" : "0") : c.n_range, "--n");
  const auto ls = parse_range(c.l_range, "--l");
  const int n_min = constrained ? 1 : 0;
  if (ns.front() < n_min) {
    throw ValidationError("--n must be >= " + std::to_string(n_min) + " for scenario " +
                          c.scenario);
  }
  if (c.exact && !std::holds_alternative<HardWall>(scenario)) {
    throw ValidationError("--exact applies only to scenario hardwall");
  }

  report::Report rep;
  rep.config = config_json(c, "spectrum");
  rep.config["oracle"] = c.oracle;
  rep.config["exact"] = c.exact;
  rep.config["grid_points"] = c.grid_points;
  rep.config["rho_max"] = report::number(c.rho_max);

  if (const auto* wall = std::get_if<HardWall>(&scenario)) {
    const auto params = SystemParams::from_product(c.m, c.mlambda.value_or(0.0));
    for (int l : ls) {
      for (int n : ns) {
        const auto asym = hardwall_energy_asymptotic(n, l, params, wall->rho0);
        const auto level = c.exact ? hardwall_energy(n, l, params, wall->rho0) : asym;
        report::ResultRow row{n, l, params.frequency(), level.energy, {}, {},
                              std::string(to_string(level.provenance)), Json::object()};
        row.extra["wavenumber"] = report::number(std::sqrt(2.0 * c.m * level.energy));
        if (c.exact) row.extra["asymptotic_energy"] = report::number(asym.energy);
        if (c.oracle) {
          attach_oracle(row,
                        oracle::RadialProblem::for_scenario(scenario, l, c.m, params.mlambda()),
                        c, level.energy, n);
        }
        rep.results.push_back(std::move(row));
      }
    }
  } else if (std::holds_alternative<NoConfinement>(scenario)) {
    const double w = *c.mlambda / c.m;
    for (int l : ls) {
      for (int n : ns) {
        const double energy = w * (2 * n + std::abs(l) - l + 1);
        report::ResultRow row{n, l, w, energy, {}, {}, "closed-form", Json::object()};
        if (c.oracle) {
          attach_oracle(row, oracle::RadialProblem::for_scenario(scenario, l, c.m, *c.mlambda), c,
                        energy);
        }
        rep.results.push_back(std::move(row));
      }
    }
    rep.notes.push_back("unconfined levels use E = w (2n + |l| - l + 1) with w = Mlambda/m");
  } else {
    for (int l : ls) {
      for (int n : ns) {
        for (double w : frequencies_for(scenario, n, l, c.m, rep)) {
          const auto level = constrained_energy(scenario, n, l, c.m, w);
          report::ResultRow row{n, l, w, level.energy, {}, {},
                                std::string(to_string(level.provenance)), Json::object()};
          if (n == 1 && std::holds_alternative<CoulombLinear>(scenario)) {
            row.extra["printed_cubic_frequency"] = report::number(
                mixed_frequency_ground(l, c.m, *c.alpha, *c.eta, CubicForm::kPrinted));
          }
          if (c.oracle) {
            attach_oracle(row, oracle::RadialProblem::for_scenario(scenario, l, c.m, c.m * w), c,
                          level.energy);
          }
          rep.results.push_back(std::move(row));
        }
      }
    }
    if (std::holds_alternative<CoulombLinear>(scenario)) {
      rep.notes.push_back(
          "ground-state frequency solves w^3 - 2m alpha^2/(1+2|l|) w^2 - 4(1+|l|) alpha eta/(1+2|l|) w"
          " - (3+2|l|) eta^2/(2m) = 0; the alpha*eta factor in the linear term follows from a_2 = 0"
          " and corrects the commonly printed form without it (see printed_cubic_frequency)");
    }
  }
  return render(rep, c.format);
}

std::string cmd_frequency(const RunConfig& c) {
  const auto scenario = build_scenario(c);
  if (!is_constrained(scenario)) {
    throw ValidationError("--scenario must be coulomb, linear or mixed for frequency");
  }
  const auto ns = parse_range(c.n_range.empty() ? "1" : c.n_range, "--n");
  const auto ls = parse_range(c.l_range, "--l");
  if (ns.front() < 1) throw ValidationError("--n must be >= 1 for scenario " + c.scenario);

  report::Report rep;
  rep.config = config_json(c, "frequency");
  for (int l : ls) {
    for (int n : ns) {
      const auto solve = frequency_solve_general(scenario, n, l, c.m);
      if (solve.frequencies.empty()) {
        rep.notes.push_back("no positive frequency with a_{n+1} = 0 for n=" + std::to_string(n) +
                            ", l=" + std::to_string(l) + " in [" +
                            format_number(solve.window_lo) + ", " +
                            format_number(solve.window_hi) + "]");
      }
      for (std::size_t i = 0; i < solve.frequencies.size(); ++i) {
        const double w = solve.frequencies[i];
        const auto level = constrained_energy(scenario, n, l, c.m, w);
        report::ResultRow row{n, l, w, level.energy, {}, {},
                              std::string(to_string(level.provenance)), Json::object()};
        row.extra["root_index"] = static_cast<int>(i);
        row.extra["window"] =
            Json::array({report::number(solve.window_lo), report::number(solve.window_hi)});
        if (n == 1) row.extra["closed_form_frequency"] = report::number(ground_frequency(scenario, l, c.m));
        rep.results.push_back(std::move(row));
      }
    }
  }
  return render(rep, c.format);
}

std::string cmd_wavefunction(const RunConfig& c) {
  const auto scenario = build_scenario(c);
  const auto ns = parse_range(c.n_range.empty() ? (is_constrained(scenario) ? "1" : "0") : c.n_range, "--n");
  const auto ls = parse_range(c.l_range, "--l");
  if (ns.size() != 1 || ls.size() != 1) {
    throw ValidationError("--n and --l must each be a single value for wavefunction");
  }
  if (c.points < 2) throw ValidationError("--points must be at least 2");
  if (!(c.r_lo >= 0.0) || !(c.r_hi > c.r_lo)) {
    throw ValidationError("--r-min must be >= 0 and below --r-max");
  }
  const int n = ns.front();
  const int l = ls.front();
  const SampleGrid samples{c.r_lo, c.r_hi, c.points};

  RadialSolution sol;
  double energy = 0.0;
  double frequency = 0.0;
  if (const auto* wall = std::get_if<HardWall>(&scenario)) {
    const double mlambda = c.mlambda.value_or(0.0);
    if (!(mlambda > 0.0)) {
      throw ValidationError("--Mlambda must be positive for a hard-wall wavefunction");
    }
    const auto params = SystemParams::from_product(c.m, mlambda);
    const auto level = hardwall_energy(n, l, params, wall->rho0);
    sol = assemble_hardwall_solution(level, params, wall->rho0, samples);
    energy = level.energy;
    frequency = params.frequency();
  } else if (is_constrained(scenario)) {
    if (n < 1) throw ValidationError("--n must be >= 1 for scenario " + c.scenario);
    if (c.frequency) {
      require_positive_flag(*c.frequency, "--frequency");
      frequency = *c.frequency;
    } else if (n == 1) {
      frequency = ground_frequency(scenario, l, c.m);
    } else {
      const auto solve = frequency_solve_general(scenario, n, l, c.m);
      if (c.root < 0 || c.root >= static_cast<int>(solve.frequencies.size())) {
        throw NumericalError("no frequency root with index --root " + std::to_string(c.root) +
                             " for n=" + std::to_string(n) + ", l=" + std::to_string(l) + " (" +
                             std::to_string(solve.frequencies.size()) + " found)");
      }
      frequency = solve.frequencies[c.root];
    }
    sol = assemble_radial_solution(scenario, n, l, c.m, frequency, samples);
    energy = constrained_energy(scenario, n, l, c.m, frequency).energy;
  } else {
    throw ValidationError("--scenario must be hardwall, coulomb, linear or mixed for wavefunction");
  }

  std::ostringstream out;
  out << "# mqmspec wavefunction\n";
  out << "# scenario=" << c.scenario << "\n# m=" << format_number(c.m) << "\n";
  if (c.alpha) out << "# alpha=" << format_number(*c.alpha) << "\n";
  if (c.eta) out << "# eta=" << format_number(*c.eta) << "\n";
  if (c.rho0) out << "# rho0=" << format_number(*c.rho0) << "\n";
  out << "# n=" << n << "\n# l=" << l << "\n";
  out << "# frequency=" << format_number(frequency) << "\n";
  out << "# Mlambda=" << format_number(sol.mlambda) << "\n";
  out << "# energy=" << format_number(energy) << "\n";
  out << "# linear_rate=" << format_number(sol.linear_rate) << "\n";
  out << "# norm=" << format_number(sol.norm) << "\n";
  out << "# radius=dimensionless r = sqrt(Mlambda) rho\n";
  out << "r,R,R2r\n";
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double r = sol.grid[i];
    const double v = sol.values[i];
    out << format_number(r) << ',' << format_number(v) << ',' << format_number(v * v * r) << '\n';
  }
  return out.str();
}

std::string cmd_verify(const RunConfig& c, bool& all_pass) {
  if (c.grid_points < 100) throw ValidationError("--grid must be at least 100");
  if (!c.inject_fault.empty() && c.inject_fault != "printed-cubic") {
    throw ValidationError("--inject-fault accepts only 'printed-cubic'");
  }
  verify::VerifyOptions options;
  options.grid_points = c.grid_points;
  options.inject_printed_cubic = c.inject_fault == "printed-cubic";
  const auto rep = verify::run_verification(options);
  all_pass = rep.all_pass();
  return report::to_json_text(rep);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of a quadrupole-moment Landau-type system under confinement"};
  app.require_subcommand(1);
  RunConfig c;

  const std::vector<std::string> scenarios = {"none", "hardwall", "coulomb", "linear", "mixed"};
  auto add_physics = [&](CLI::App* sub) {
    sub->add_option("--scenario", c.scenario, "none | hardwall | coulomb | linear | mixed")
        ->required()
        ->check(CLI::IsMember(scenarios));
    sub->add_option("--m", c.m, "particle mass (default 1)");
    sub->add_option("--alpha", c.alpha, "Coulomb-type coupling");
    sub->add_option("--eta", c.eta, "linear coupling");
    sub->add_option("--Mlambda", c.mlambda, "field strength M*lambda (hardwall, none)");
    sub->add_option("--rho0", c.rho0, "hard-wall radius");
    sub->add_option("--n", c.n_range, "radial quantum number or range a..b");
    sub->add_option("--l", c.l_range, "angular momentum or range a..b (default 0)");
  };
  auto add_output = [&](CLI::App* sub, bool csv) {
    sub->add_option("--output", c.output, "write the report here instead of stdout");
    if (csv) {
      sub->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    }
  };

  auto* spectrum = app.add_subcommand("spectrum", "energies and frequencies per (n, l)");
  add_physics(spectrum);
  add_output(spectrum, true);
  spectrum->add_flag("--oracle", c.oracle, "compare against the finite-difference eigensolver");
  spectrum->add_flag("--exact", c.exact, "hard wall: exact Kummer/Bessel roots");
  spectrum->add_option("--grid", c.grid_points, "oracle grid points (default 4000)");
  spectrum->add_option("--rho-max", c.rho_max, "oracle outer radius override");

  auto* frequency = app.add_subcommand("frequency", "all truncating frequencies by scan");
  add_physics(frequency);
  add_output(frequency, true);

  auto* wavefunction = app.add_subcommand("wavefunction", "normalised radial function as CSV");
  add_physics(wavefunction);
  add_output(wavefunction, false);
  wavefunction->add_option("--frequency", c.frequency, "use this frequency instead of solving");
  wavefunction->add_option("--root", c.root, "frequency root index for n >= 2 (default 0)");
  wavefunction->add_option("--r-min", c.r_lo, "first sample radius (default 0)");
  wavefunction->add_option("--r-max", c.r_hi, "last sample radius (default 6)");
  wavefunction->add_option("--points", c.points, "sample count (default 601)");

  auto* verify_cmd = app.add_subcommand("verify", "run the self-check suite");
  add_output(verify_cmd, false);
  verify_cmd->add_option("--grid", c.grid_points, "oracle grid points (default 4000)");
  verify_cmd->add_option("--inject-fault", c.inject_fault, "printed-cubic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  try {
    std::string text;
    int status = kSuccess;
    if (spectrum->parsed()) {
      text = cmd_spectrum(c);
    } else if (frequency->parsed()) {
      text = cmd_frequency(c);
    } else if (wavefunction->parsed()) {
      text = cmd_wavefunction(c);
    } else {
      bool all_pass = false;
      text = cmd_verify(c, all_pass);
      if (!all_pass) {
        err << "verify: one or more checks failed\n";
        status = kValidationFailure;
      }
    }
    if (c.output.empty()) {
      out << text;
    } else {
      report::write_atomically(c.output, text);
    }
    return status;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNonConvergence;
  }
}

}  // namespace mqm::cli
